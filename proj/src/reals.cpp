#include "numerans/reals.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <utility>

namespace numerans {

namespace {

// base^e for canonical base > 0; the result stays canonical.
Ratio qpow(const Ratio& base, unsigned long e) {
  Ratio r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
  return r;
}

// r_x for the 3/2 system from state N != 0 at depth |x| = len:
// r_x = (lambda_max(N) - lambda_min(N)) (2/3)^len / K where
// lambda_min/max are the limits of the extremal state trajectories
// scaled by (2/3)^m. After d steps the integer trajectories bracket the
// limits within (2/3)^d on each side.
RealValue three_halves_ratio(std::int64_t state, int len, int d) {
  mpz_class mn(static_cast<long>(state)), mx = mn;
  for (int i = 0; i < d; ++i) {
    mn *= 3;
    if (mpz_odd_p(mn.get_mpz_t())) mn += 1;
    mn /= 2;
    mx *= 3;
    mx += mpz_odd_p(mx.get_mpz_t()) ? 1 : 2;
    mx /= 2;
  }
  Ratio shrink = qpow(Ratio(2, 3), static_cast<unsigned long>(d));
  Ratio d_lo = Ratio(mpz_class(mx - mn)) * shrink;
  Ratio d_hi = Ratio(mpz_class(mx - mn + 2)) * shrink;
  RealValue k = k_enclosure(d);
  Ratio scale = qpow(Ratio(2, 3), static_cast<unsigned long>(len));
  return RealValue::enclosure(d_lo * scale / k.hi(), d_hi * scale / k.lo());
}

RealValue ratio_from_state(const NumerationSystem& sys,
                           const RatioProvider& prov,
                           std::optional<StateRef> q, int len, int prec) {
  const AutomatonSpec& spec = sys.spec;
  if (!q || !spec.is_live(*q)) return RealValue::exact(Ratio(0));
  switch (spec.builtin) {
    case Builtin::FullBinary:
      return RealValue::exact(
          qpow(Ratio(1, 2), static_cast<unsigned long>(len) + 1));
    case Builtin::IntegerBase:
      if (len == 0) return RealValue::exact(Ratio(spec.base - 1, spec.base));
      return RealValue::exact(
          qpow(Ratio(1, spec.base), static_cast<unsigned long>(len)));
    case Builtin::DyckPrefix:
      return RealValue::exact(
          Ratio(static_cast<long>(q->key) + 1) *
          qpow(Ratio(1, 2), static_cast<unsigned long>(len) + 1));
    case Builtin::RationalBase32:
      if (len == 0) return RealValue::exact(Ratio(1, 3));
      return three_halves_ratio(q->key, len, prec);
    default:
      break;
  }
  if (prov.strategy == RatioProvider::Strategy::Spectral) {
    auto it = prov.a.find(q->key);
    double aq = (it == prov.a.end()) ? 0.0 : it->second;
    if (aq <= 0.0) return RealValue::exact(Ratio(0));
    double r = aq * (prov.theta - 1.0) /
               std::pow(prov.theta, static_cast<double>(len) + 1.0);
    Ratio center(r);
    Ratio err = center * Ratio(1, 1000000000);
    Ratio lo = center - err;
    if (lo < 0) lo = 0;
    return RealValue::enclosure(lo, center + err);
  }
  // NumericLimit: bracket two finite-stage estimates u_q(n-len)/v(n).
  int n1 = std::max({prec, 4 * len + 16, 48});
  int n2 = 2 * n1;
  auto estimate = [&](int n) {
    BigCount num = sys.cache->u(spec, *q, n - len);
    BigCount den = sys.cache->v(spec, spec.initial, n);
    Ratio e(num, den);
    e.canonicalize();
    return e;
  };
  Ratio e1 = estimate(n1), e2 = estimate(n2);
  return RealValue::enclosure(std::min(e1, e2), std::max(e1, e2));
}

RealValue s0_prec(const NumerationSystem& sys, const RatioProvider& prov,
                  int prec) {
  RealValue r =
      ratio_from_state(sys, prov, sys.spec.initial, 0, prec);
  if (r.is_exact()) return RealValue::exact(Ratio(1) - r.value());
  return RealValue::enclosure(Ratio(1) - r.hi(), Ratio(1) - r.lo());
}

RealValue alpha_prec(const NumerationSystem& sys, const RatioProvider& prov,
                     const Word& y, int prec) {
  if (!center_member(sys, y))
    throw value_error("alpha is defined on center words only");
  const AutomatonSpec& spec = sys.spec;
  RealValue total = s0_prec(sys, prov, prec);
  StateRef q = spec.initial;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (int a = 0; a < y[i]; ++a)
      total += ratio_from_state(sys, prov, spec.step(q, a),
                                static_cast<int>(i) + 1, prec);
    q = *spec.step(q, y[i]);
  }
  return total;
}

}  // namespace

RatioProvider& ratio_provider(const NumerationSystem& sys) {
  if (sys.ratios) return *sys.ratios;
  const AutomatonSpec& spec = sys.spec;
  switch (spec.builtin) {
    case Builtin::FullBinary:
    case Builtin::IntegerBase:
    case Builtin::DyckPrefix:
    case Builtin::RationalBase32:
      sys.ratios = std::make_shared<RatioProvider>();
      return *sys.ratios;
    case Builtin::None:
      if (spec.finite()) {
        sys.ratios = std::make_shared<RatioProvider>(spectral_ratios(spec));
        return *sys.ratios;
      }
      break;
    default:
      break;
  }
  throw unsupported_error("no interval-ratio provider for system '" +
                          sys.name + "'");
}

RatioProvider spectral_ratios(const AutomatonSpec& spec) {
  if (!spec.finite())
    throw unsupported_error("spectral ratios need a finite automaton");

  std::vector<StateRef> live;
  for (StateRef q : *spec.finite_states)
    if (spec.is_live(q)) live.push_back(q);

  RatioProvider prov;
  prov.strategy = RatioProvider::Strategy::NumericLimit;
  prov.certified = false;
  if (live.empty()) return prov;

  std::unordered_map<std::int64_t, int> index;
  for (std::size_t i = 0; i < live.size(); ++i)
    index.emplace(live[i].key, static_cast<int>(i));
  auto q0_it = index.find(spec.initial.key);
  if (q0_it == index.end()) return prov;
  int q0 = q0_it->second;

  const int m = static_cast<int>(live.size());
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < spec.alphabet.size(); ++a) {
      auto t = spec.step(live[i], a);
      if (!t) continue;
      auto jt = index.find(t->key);
      if (jt != index.end()) mat(i, jt->second) += 1.0;
    }

  // Power iteration on the letter-count matrix. Reducible automata
  // whose dominant part still forces a single growth rate (e.g. integer
  // bases) converge too; genuinely polynomial or periodic count
  // sequences fail the convergence or theta > 1 test and fall back.
  Eigen::VectorXd x = Eigen::VectorXd::Constant(m, 1.0 / m);
  double theta = 0.0;
  bool converged = false;
  for (int iter = 0; iter < 200000; ++iter) {
    Eigen::VectorXd y = mat * x;
    double s = y.sum();
    if (s <= 0.0) break;
    y /= s;
    if (std::abs(s - theta) < 1e-13 * std::max(1.0, s) &&
        (y - x).cwiseAbs().maxCoeff() < 1e-13) {
      theta = s;
      x = y;
      converged = true;
      break;
    }
    theta = s;
    x = y;
  }

  if (!converged || theta <= 1.0 + 1e-9 || x(q0) <= 0.0) return prov;

  prov.strategy = RatioProvider::Strategy::Spectral;
  prov.certified = true;
  prov.theta = theta;
  prov.tolerance = 1e-9;
  for (int i = 0; i < m; ++i) prov.a[live[i].key] = x(i) / x(q0);
  return prov;
}

RealValue ratio_r(const NumerationSystem& sys, const Word& w) {
  return ratio_r(sys, w, ratio_provider(sys).default_precision);
}

RealValue ratio_r(const NumerationSystem& sys, const Word& w, int precision) {
  RatioProvider& prov = ratio_provider(sys);
  return ratio_from_state(sys, prov, step_word(sys.spec, w),
                          static_cast<int>(w.size()), precision);
}

RealValue s0(const NumerationSystem& sys) {
  RatioProvider& prov = ratio_provider(sys);
  return s0_prec(sys, prov, prov.default_precision);
}

RealValue alpha(const NumerationSystem& sys, const Word& y) {
  RatioProvider& prov = ratio_provider(sys);
  return alpha_prec(sys, prov, y, prov.default_precision);
}

Interval interval_of(const NumerationSystem& sys, const Word& y) {
  RatioProvider& prov = ratio_provider(sys);
  int prec = prov.default_precision;
  RealValue lo = alpha_prec(sys, prov, y, prec);
  RealValue r = ratio_from_state(sys, prov, step_word(sys.spec, y),
                                 static_cast<int>(y.size()), prec);
  return Interval{lo, lo + r, y};
}

std::vector<Interval> subdivide(const NumerationSystem& sys, const Word& y) {
  RatioProvider& prov = ratio_provider(sys);
  int prec = prov.default_precision;
  const AutomatonSpec& spec = sys.spec;
  RealValue cum = alpha_prec(sys, prov, y, prec);
  StateRef q = *step_word(spec, y);
  std::vector<Interval> out;
  for (int a = 0; a < spec.alphabet.size(); ++a) {
    auto t = spec.step(q, a);
    if (!t || !spec.is_live(*t)) continue;
    RealValue r = ratio_from_state(sys, prov, *t,
                                   static_cast<int>(y.size()) + 1, prec);
    RealValue hi = cum + r;
    Word label = y;
    label.push_back(a);
    out.push_back(Interval{cum, hi, std::move(label)});
    cum = hi;
  }
  return out;
}

namespace {

// Exact val_S for systems whose sibling ratios depend on length alone:
// r(len) = kappa * base^{-len}. The period is unrolled until the state
// entered at a period boundary repeats; the remaining cycles form a
// geometric series.
RealValue geometric_infinite(const NumerationSystem& sys,
                             const RatioProvider& prov, const UPWord& w,
                             int base, const Ratio& kappa) {
  const AutomatonSpec& spec = sys.spec;
  const long per_len = static_cast<long>(w.period().size());

  StateRef q = *step_word(spec, w.preperiod());
  std::unordered_map<std::int64_t, long> seen;
  seen.emplace(q.key, 0);
  long first = 0, cycle = 0;
  for (long t = 1;; ++t) {
    for (int a : w.period()) q = *spec.step(q, a);
    auto [it, fresh] = seen.emplace(q.key, t);
    if (!fresh) {
      first = it->second;
      cycle = t - first;
      break;
    }
  }
  const long p0 = static_cast<long>(w.preperiod().size());
  const long cut1 = p0 + first * per_len;
  const long cut2 = cut1 + cycle * per_len;

  Ratio total =
      Ratio(1) - ratio_from_state(sys, prov, spec.initial, 0, 0).value();
  Ratio window(0);
  q = spec.initial;
  for (long i = 0; i < cut2; ++i) {
    int letter = w.at(static_cast<std::size_t>(i));
    for (int a = 0; a < letter; ++a) {
      auto t = spec.step(q, a);
      if (t && spec.is_live(*t)) {
        Ratio r = kappa *
                  qpow(Ratio(1, base), static_cast<unsigned long>(i) + 1);
        total += r;
        if (i >= cut1) window += r;
      }
    }
    q = *spec.step(q, letter);
  }
  Ratio rho = qpow(Ratio(1, base), static_cast<unsigned long>(cut2 - cut1));
  total += window * rho / (Ratio(1) - rho);
  return RealValue::exact(total);
}

// Exact val_S on Dyck prefixes. A sibling 'a' passed below a 'b' at
// level l has ratio (l+2) 2^{-len-1}; along the period the level grows
// by the net drift per repetition, so each period position contributes
// an arithmetico-geometric series sum (A+Bk) rho^k
// = A/(1-rho) + B rho/(1-rho)^2.
RealValue dyck_infinite(const UPWord& w) {
  Ratio total(1, 2);
  long level = 0;
  const Word& pre = w.preperiod();
  for (std::size_t i = 0; i < pre.size(); ++i) {
    if (pre[i] == 1)
      total += Ratio(level + 2) *
               qpow(Ratio(1, 2), static_cast<unsigned long>(i) + 2);
    level += (pre[i] == 0) ? 1 : -1;
  }
  const Word& per = w.period();
  long drift = 0;
  for (int a : per) drift += (a == 0) ? 1 : -1;
  Ratio rho = qpow(Ratio(1, 2), static_cast<unsigned long>(per.size()));
  Ratio denom = Ratio(1) - rho;
  long lev = level;
  for (std::size_t j = 0; j < per.size(); ++j) {
    if (per[j] == 1) {
      Ratio c = qpow(Ratio(1, 2),
                     static_cast<unsigned long>(pre.size() + j) + 2);
      total += c * (Ratio(lev + 2) / denom +
                    Ratio(drift) * rho / (denom * denom));
    }
    lev += (per[j] == 0) ? 1 : -1;
  }
  return RealValue::exact(total);
}

}  // namespace

RealValue value_of_infinite(const NumerationSystem& sys, const UPWord& w) {
  UPValidation check = validate_up_word(sys, w);
  if (check.status == UPStatus::NotInAdherence)
    throw value_error("word is not in the adherence of the language");
  if (check.status == UPStatus::Undetermined)
    throw value_error(
        "adherence membership undetermined within the exploration limit");

  RatioProvider& prov = ratio_provider(sys);
  switch (sys.spec.builtin) {
    case Builtin::DyckPrefix:
      return dyck_infinite(w);
    case Builtin::FullBinary:
      return geometric_infinite(sys, prov, w, 2, Ratio(1, 2));
    case Builtin::IntegerBase:
      return geometric_infinite(sys, prov, w, sys.spec.base, Ratio(1));
    default: {
      std::size_t depth =
          std::max<std::size_t>(static_cast<std::size_t>(prov.default_precision),
                                w.preperiod().size() + 4 * w.period().size());
      return value_of_prefix(sys, w.prefix(depth));
    }
  }
}

RealValue value_of_prefix(const NumerationSystem& sys, const Word& y) {
  RatioProvider& prov = ratio_provider(sys);
  int prec = prov.default_precision;
  if (!center_member(sys, y))
    throw value_error("prefix is not a center word");
  RealValue a = alpha_prec(sys, prov, y, prec);
  RealValue r = ratio_from_state(sys, prov, step_word(sys.spec, y),
                                 static_cast<int>(y.size()), prec);
  // The true value lies in [s0, 1]; intersecting keeps uncertified
  // numeric-limit brackets inside the representable interval.
  Ratio hi = (a + r).hi();
  if (hi > 1) hi = 1;
  Ratio lo = a.lo();
  if (lo > hi) lo = hi;
  return RealValue::enclosure(std::move(lo), std::move(hi));
}

RealValue value_of_prefix_stream(const NumerationSystem& sys,
                                 const std::function<int(std::size_t)>& letters,
                                 int n) {
  if (n < 0) throw value_error("prefix length must be nonnegative");
  Word y;
  y.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) y.push_back(letters(static_cast<std::size_t>(i)));
  return value_of_prefix(sys, y);
}

namespace {

struct AmbiguousBoundary {
  int position;
};

Word encode_attempt(const NumerationSystem& sys, const RatioProvider& prov,
                    const Ratio& x, int depth, BoundaryPolicy policy,
                    int prec) {
  const AutomatonSpec& spec = sys.spec;
  RealValue s = s0_prec(sys, prov, prec);
  if (x > 1) throw value_error("x lies above 1");
  if (x < s.lo()) throw value_error("x lies below s0");
  if (!s.is_exact() && x < s.hi()) throw AmbiguousBoundary{0};

  StateRef q = spec.initial;
  RealValue cum = s;
  Word y;
  for (int d = 1; d <= depth; ++d) {
    std::vector<std::pair<int, StateRef>> kids;
    for (int a = 0; a < spec.alphabet.size(); ++a) {
      auto t = spec.step(q, a);
      if (t && spec.is_live(*t)) kids.emplace_back(a, *t);
    }
    bool placed = false;
    for (std::size_t ci = 0; ci < kids.size(); ++ci) {
      bool last = (ci + 1 == kids.size());
      RealValue r = ratio_from_state(sys, prov, kids[ci].second, d, prec);
      RealValue hi = cum + r;
      bool accept = (policy == BoundaryPolicy::Leftmost || last)
                        ? (x <= hi.lo())
                        : (x < hi.lo());
      if (accept) {
        y.push_back(kids[ci].first);
        q = kids[ci].second;
        placed = true;
        break;
      }
      bool skip = (policy == BoundaryPolicy::Leftmost) ? (x > hi.hi())
                                                       : (x >= hi.hi());
      if (!skip) throw AmbiguousBoundary{d};
      cum = hi;
    }
    if (!placed) throw AmbiguousBoundary{d};
  }
  return y;
}

}  // namespace

Word encode_real(const NumerationSystem& sys, const Ratio& x, int depth,
                 BoundaryPolicy policy, int refine_budget) {
  if (depth < 0) throw value_error("depth must be nonnegative");
  RatioProvider& prov = ratio_provider(sys);
  bool refinable = sys.spec.builtin == Builtin::RationalBase32 ||
                   prov.strategy == RatioProvider::Strategy::NumericLimit;
  int attempts = refinable ? refine_budget + 1 : 1;
  int prec = prov.default_precision;
  int last_pos = 0;
  for (int t = 0; t < attempts; ++t, prec *= 2) {
    try {
      return encode_attempt(sys, prov, x, depth, policy, prec);
    } catch (const AmbiguousBoundary& amb) {
      last_pos = amb.position;
    }
  }
  throw value_error(
      "ambiguous at position " + std::to_string(last_pos) +
      ": cannot separate x from an interval boundary within the "
      "refinement budget");
}

std::vector<UPWord> endpoint_representations(const NumerationSystem& sys,
                                             const Ratio& x, int depth_bound) {
  if (sys.spec.builtin != Builtin::DyckPrefix)
    throw unsupported_error(
        "endpoint representations are implemented for the Dyck-prefix "
        "system only");
  Ratio half(1, 2);
  if (x == half) return {UPWord({}, {0})};
  if (x == 1) return {UPWord({}, {0, 1})};
  if (x < half || x > 1)
    throw value_error("x lies outside [1/2, 1]");

  // Rightmost descent finds the w with x = inf I_w; Leftmost descent
  // finds the z with x = sup I_z. Both exist at the same finite depth
  // exactly when x is an endpoint of the subdivision.
  Word y_r, y_l;
  Ratio inf_r = half, inf_l = half;
  long lev_r = 0, lev_l = 0;
  std::optional<Word> found_w, found_z;
  long level_z = 0;

  for (int d = 1;
       d <= depth_bound && (!found_w.has_value() || !found_z.has_value());
       ++d) {
    Ratio unit = qpow(Ratio(1, 2), static_cast<unsigned long>(d) + 1);
    if (!found_w.has_value()) {
      Ratio ra = Ratio(lev_r + 2) * unit;
      if (lev_r >= 1 && x >= inf_r + ra) {
        inf_r += ra;
        lev_r -= 1;
        y_r.push_back(1);
      } else {
        lev_r += 1;
        y_r.push_back(0);
      }
      if (inf_r == x) found_w = y_r;
    }
    if (!found_z.has_value()) {
      Ratio ra = Ratio(lev_l + 2) * unit;
      Ratio sup;
      if (x <= inf_l + ra) {
        sup = inf_l + ra;
        lev_l += 1;
        y_l.push_back(0);
      } else {
        inf_l += ra;
        sup = inf_l + Ratio(lev_l) * unit;
        lev_l -= 1;
        y_l.push_back(1);
      }
      if (sup == x) {
        found_z = y_l;
        level_z = lev_l;
      }
    }
  }
  if (!found_w.has_value() || !found_z.has_value())
    throw value_error("x is not a subdivision endpoint within the depth bound");

  Word zbar = *found_z;
  for (long i = 0; i < level_z; ++i) zbar.push_back(1);
  return {UPWord(*found_w, {0}), UPWord(std::move(zbar), {0, 1})};
}

RealValue k_enclosure(int n) {
  if (n < 0) throw value_error("n must be nonnegative");
  std::vector<BigCount> g = g_sequence(n);
  Ratio p = qpow(Ratio(2, 3), static_cast<unsigned long>(n));
  return RealValue::enclosure(Ratio(g[static_cast<std::size_t>(n)]) * p,
                              Ratio(g[static_cast<std::size_t>(n)] + 1) * p);
}

ConvergenceTable convergence_table(const NumerationSystem& sys,
                                   const UPWord& w, int N) {
  ConvergenceTable out;
  for (int n = 1; n <= N; ++n) {
    Word y = w.prefix(static_cast<std::size_t>(n));
    if (!accepts(sys.spec, y)) {
      out.truncated = true;
      out.note = "prefix of length " + std::to_string(n) +
                 " is not in the language; table truncated";
      break;
    }
    BigCount val = value_of(sys, y);
    BigCount v = count_v(sys, sys.spec.initial, n);
    Ratio ratio(val, v);
    ratio.canonicalize();
    out.rows.push_back(
        ConvergenceRow{n, std::move(y), std::move(val), std::move(v),
                       std::move(ratio)});
  }
  return out;
}

}  // namespace numerans
