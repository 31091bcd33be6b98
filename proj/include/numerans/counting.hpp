#pragma once

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <vector>

#include "numerans/automaton.hpp"

namespace numerans {

/// Arbitrary-precision nonnegative integer.
using BigCount = mpz_class;

/// Memoized complexity functions u_q(n) (words of length n accepted
/// from q) and v_q(n) (length at most n). The DP sweeps lengths 0..N
/// over the cone of states reachable from the queried root, so lazily
/// generated infinite automata cost O(reachable states x N).
class CountCache {
 public:
  /// u_q(n). Per-state series are cached and grown on demand.
  BigCount u(const AutomatonSpec& spec, StateRef q, int n);

  /// v_q(n) = sum of u_q(0..n).
  BigCount v(const AutomatonSpec& spec, StateRef q, int n);

  /// Batched query: answers u_{q}(len) for states q reachable from
  /// `root` within N - len steps, in one sweep. Used by value_of so a
  /// whole word costs a single DP pass. Each query state must actually
  /// be reachable within depth N - len.
  struct Query {
    StateRef state;
    int len;
  };
  std::vector<BigCount> u_batch(const AutomatonSpec& spec, StateRef root,
                                int n, const std::vector<Query>& queries);

 private:
  const std::vector<BigCount>& series(const AutomatonSpec& spec, StateRef q,
                                      int n);
  // Cached entries are keyed by state only, so one cache serves exactly
  // one automaton; mixing automata is rejected (best effort, via a
  // structural fingerprint that survives copies of the spec).
  void bind(const AutomatonSpec& spec);

  bool bound_ = false;
  int fp_builtin_ = 0;
  int fp_letters_ = 0;
  std::int64_t fp_initial_ = 0;
  std::map<std::int64_t, std::vector<BigCount>> series_;
  std::mutex mu_;
};

/// Closed-form count of length-n words accepted from Dyck state d_m:
/// (m+1)/(n+1) * C(n+1, (n-m)/2) when n >= m and n == m (mod 2), else 0.
BigCount dyck_u_closed(int m, int n);

/// The rational-base-3/2 counting sequence G_0 = 1, G_{n+1} = ceil(3/2 G_n),
/// returned as G_0..G_n.
std::vector<BigCount> g_sequence(int n);

struct GrowthClass {
  enum Kind { Polynomial, Exponential } kind = Polynomial;
  // Informational bound when polynomial: (SCCs on some path) - 1.
  int degree_bound = 0;
  bool uncountable_adherence = false;
  bool uncountable_linfty = false;
};

/// Structural growth classification of a finite DFA (trimmed
/// internally). Throws unsupported_error on infinite automata.
GrowthClass classify(const AutomatonSpec& spec);

}  // namespace numerans
