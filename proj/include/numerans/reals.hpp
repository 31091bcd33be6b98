#pragma once

#include <functional>
#include <unordered_map>

#include "numerans/adherence.hpp"
#include "numerans/rational.hpp"

namespace numerans {

/// Source of the interval ratios r_w. Closed forms yield exact
/// rationals (except the 3/2 system, whose ratios involve the constant
/// K and are certified enclosures); spectral providers carry the Perron
/// root theta and the eigenvector ratios a_q with a declared tolerance;
/// the numeric-limit fallback reports uncertified brackets.
struct RatioProvider {
  enum class Strategy { ClosedForm, Spectral, NumericLimit };
  Strategy strategy = Strategy::ClosedForm;
  bool certified = true;
  double theta = 0.0;
  std::unordered_map<std::int64_t, double> a;  // state key -> a_q
  double tolerance = 1e-9;
  // Refinement depth for enclosure-producing closed forms.
  int default_precision = 64;
};

/// The provider attached to a system, created on first use. Throws
/// unsupported_error for systems with no usable ratio source.
RatioProvider& ratio_provider(const NumerationSystem& sys);

/// Perron-eigenvalue ratios for a finite DFA; falls back to a
/// NumericLimit provider when the power iteration does not certify a
/// dominant root above 1.
RatioProvider spectral_ratios(const AutomatonSpec& spec);

/// r_w = lim u_{q0.w}(n-|w|)/v_{q0}(n); Exact(0) for non-center w.
RealValue ratio_r(const NumerationSystem& sys, const Word& w);
RealValue ratio_r(const NumerationSystem& sys, const Word& w, int precision);

/// s_0 = 1 - r_eps, the left end of the represented interval [s_0, 1].
RealValue s0(const NumerationSystem& sys);

/// Left endpoint of I_y, computed along the prefix path. Precondition:
/// center_member(y).
RealValue alpha(const NumerationSystem& sys, const Word& y);

Interval interval_of(const NumerationSystem& sys, const Word& y);

/// The children I_{ya} over letters with live targets, in alphabet
/// order; they tile I_y.
std::vector<Interval> subdivide(const NumerationSystem& sys, const Word& y);

/// val_S of an infinite word: exact rational when the ratios along the
/// period form an arithmetico-geometric series (Dyck prefixes, integer
/// bases, full binary), a certified enclosure otherwise.
RealValue value_of_infinite(const NumerationSystem& sys, const UPWord& w);

/// Certified bracket [alpha_y, alpha_y + r_y] for the length-n center
/// prefix y of a stream of letters.
RealValue value_of_prefix(const NumerationSystem& sys, const Word& y);
RealValue value_of_prefix_stream(const NumerationSystem& sys,
                                 const std::function<int(std::size_t)>& letters,
                                 int n);

enum class BoundaryPolicy { Leftmost, Rightmost };

/// Digit-by-digit inversion of the I_y partition: the length-`depth`
/// center word whose interval contains x. On a shared endpoint,
/// Leftmost picks the lower child and Rightmost the upper. Throws
/// value_error (Ambiguous) when enclosure ratios cannot separate x from
/// a boundary within the refinement budget.
Word encode_real(const NumerationSystem& sys, const Ratio& x, int depth,
                 BoundaryPolicy policy, int refine_budget = 4);

/// All S-representations of an interval endpoint x of the Dyck-prefix
/// system: {w a^w, zbar (ab)^w} where zbar closes z to the smallest
/// Dyck word with prefix z. Degenerate ends: 1/2 -> {a^w}, 1 -> {(ab)^w}.
std::vector<UPWord> endpoint_representations(const NumerationSystem& sys,
                                             const Ratio& x,
                                             int depth_bound = 64);

/// Enclosure of the 3/2-system constant K: [G_n (2/3)^n, (G_n+1)(2/3)^n].
RealValue k_enclosure(int n);

struct ConvergenceRow {
  int n;
  Word prefix;
  BigCount val;
  BigCount v;
  Ratio ratio;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool truncated = false;
  std::string note;
};

/// Rows (n, val(w[0,n-1]), v(n), val/v) for n = 1..N; truncates with a
/// note when a prefix leaves the language.
ConvergenceTable convergence_table(const NumerationSystem& sys,
                                   const UPWord& w, int N);

}  // namespace numerans
