#pragma once

#include <memory>
#include <string>

#include "numerans/counting.hpp"

namespace numerans {

struct RatioProvider;  // defined in reals.hpp

/// An abstract numeration system S = (L, Sigma, <): automaton plus
/// counting caches plus (lazily attached) interval-ratio provider.
/// Copies share the caches; all operations are pure with respect to
/// the represented system.
struct NumerationSystem {
  AutomatonSpec spec;
  std::string name;
  std::shared_ptr<CountCache> cache;
  mutable std::shared_ptr<RatioProvider> ratios;

  const Alphabet& alphabet() const { return spec.alphabet; }
};

/// Wraps an automaton; requires the accepted language to be infinite.
NumerationSystem make_system(AutomatonSpec spec, std::string name);

/// Builtin systems by name: full-binary, int-<b> (e.g. int-10), dyck,
/// dyck-proper, three-halves, balanced, half-prefix. Throws input_error
/// on unknown names.
NumerationSystem builtin_system(const std::string& name);
std::vector<std::string> builtin_names();

inline BigCount count_u(const NumerationSystem& sys, StateRef q, int n) {
  return sys.cache->u(sys.spec, q, n);
}
inline BigCount count_v(const NumerationSystem& sys, StateRef q, int n) {
  return sys.cache->v(sys.spec, q, n);
}

Ordering radix_cmp(const NumerationSystem&, const Word& w1, const Word& w2);

/// val_S(w): the 0-based genealogical index of w in L. Throws
/// value_error when w is not in the language.
BigCount value_of(const NumerationSystem& sys, const Word& w);

/// rep_S(n): the word whose value is n. Total on the nonnegative
/// integers.
Word word_at(const NumerationSystem& sys, const BigCount& n);

}  // namespace numerans
