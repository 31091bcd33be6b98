#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "numerans/words.hpp"

namespace numerans {

/// Opaque state identity. Infinite automata key their states by a
/// canonical integer label (Dyck: level, 3/2 system: value, ...) so
/// memoization works across calls.
struct StateRef {
  std::int64_t key = 0;
  friend bool operator==(StateRef a, StateRef b) { return a.key == b.key; }
  friend bool operator!=(StateRef a, StateRef b) { return a.key != b.key; }
};

struct StateRefHash {
  std::size_t operator()(StateRef q) const noexcept {
    return std::hash<std::int64_t>{}(q.key);
  }
};

enum class Builtin {
  None,
  FullBinary,
  IntegerBase,
  DyckPrefix,
  DyckProper,
  RationalBase32,
  BalancedDiff,
  HalfPrefixDemo,
};

/// Deterministic automaton, finite or lazily generated. Dead is a
/// distinguished sentinel (std::nullopt), absorbing by convention, so
/// infinite automata need not materialize a sink.
struct AutomatonSpec {
  Alphabet alphabet;
  StateRef initial;
  // nullopt = Dead.
  std::function<std::optional<StateRef>(StateRef, int)> step;
  std::function<bool(StateRef)> is_final;
  // Live iff the language accepted from the state is infinite.
  std::function<bool(StateRef)> is_live;
  std::function<std::string(StateRef)> label;
  // Present iff the automaton is finite (all reachable states listed).
  std::optional<std::vector<StateRef>> finite_states;
  Builtin builtin = Builtin::None;
  int base = 0;  // IntegerBase parameter

  bool finite() const { return finite_states.has_value(); }
};

std::optional<StateRef> step_word(const AutomatonSpec& spec, StateRef from,
                                  const Word& w);
std::optional<StateRef> step_word(const AutomatonSpec& spec, const Word& w);
bool accepts(const AutomatonSpec& spec, const Word& w);

// Builtin languages.
AutomatonSpec full_binary();
AutomatonSpec integer_base(int b);
AutomatonSpec dyck_prefix();
AutomatonSpec dyck_proper();
AutomatonSpec rational_base_3_2();
AutomatonSpec balanced_diff();
AutomatonSpec half_prefix_demo();

/// Parses the line-oriented DFA text format ('#' starts a comment):
///   alphabet: a b
///   initial: q0
///   finals: q0 q1
///   trans: q0 a q1
/// Letters are ordered as listed; that order defines <. Liveness is
/// computed by cycle reachability.
AutomatonSpec parse_dfa_file(const std::string& text);

}  // namespace numerans
