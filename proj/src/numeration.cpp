#include "numerans/numeration.hpp"

#include <algorithm>

namespace numerans {

NumerationSystem make_system(AutomatonSpec spec, std::string name) {
  if (!spec.is_live(spec.initial))
    throw value_error("numeration system needs an infinite language");
  NumerationSystem sys;
  sys.spec = std::move(spec);
  sys.name = std::move(name);
  sys.cache = std::make_shared<CountCache>();
  return sys;
}

NumerationSystem builtin_system(const std::string& name) {
  if (name == "full-binary") return make_system(full_binary(), name);
  if (name == "dyck") return make_system(dyck_prefix(), name);
  if (name == "dyck-proper") return make_system(dyck_proper(), name);
  if (name == "three-halves") return make_system(rational_base_3_2(), name);
  if (name == "balanced") return make_system(balanced_diff(), name);
  if (name == "half-prefix") return make_system(half_prefix_demo(), name);
  if (name.rfind("int-", 0) == 0) {
    int b;
    try {
      b = std::stoi(name.substr(4));
    } catch (const std::exception&) {
      throw input_error("bad integer base in '" + name + "'");
    }
    return make_system(integer_base(b), name);
  }
  throw input_error("unknown builtin language '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"full-binary", "int-<b>",      "dyck",       "dyck-proper",
          "three-halves", "balanced",    "half-prefix"};
}

Ordering radix_cmp(const NumerationSystem&, const Word& w1, const Word& w2) {
  return radix_compare(w1, w2);
}

BigCount value_of(const NumerationSystem& sys, const Word& w) {
  if (!accepts(sys.spec, w))
    throw value_error("word is not in the language");
  int n = static_cast<int>(w.size());
  if (n == 0) return 0;

  // val(w) = v(|w|-1) + sum over positions i and letters a < w[i] of
  // u_{q0 . w[0,i-1]a}(|w|-i-1). Dead siblings contribute 0. All sibling
  // counts are resolved by one DP sweep rooted at the initial state.
  std::vector<CountCache::Query> queries;
  StateRef q = sys.spec.initial;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < w[i]; ++a) {
      if (auto sib = sys.spec.step(q, a))
        queries.push_back({*sib, n - i - 1});
    }
    q = *sys.spec.step(q, w[i]);
  }
  std::vector<BigCount> sibling_counts =
      sys.cache->u_batch(sys.spec, sys.spec.initial, n, queries);

  BigCount val = count_v(sys, sys.spec.initial, n - 1);
  for (const BigCount& c : sibling_counts) val += c;
  return val;
}

Word word_at(const NumerationSystem& sys, const BigCount& n) {
  if (n < 0) throw value_error("word_at is defined for n >= 0");
  StateRef q0 = sys.spec.initial;

  // Gallop for the minimal length l with v(l) > n, then binary search.
  int hi = 1;
  while (count_v(sys, q0, hi) <= n) hi *= 2;
  int lo = 0;
  if (count_v(sys, q0, 0) > n) {
    hi = 0;
  } else {
    // invariant: v(lo) <= n < v(hi)
    while (hi - lo > 1) {
      int mid = lo + (hi - lo) / 2;
      if (count_v(sys, q0, mid) <= n)
        lo = mid;
      else
        hi = mid;
    }
  }
  int length = hi;
  BigCount t = n;
  if (length > 0) t -= count_v(sys, q0, length - 1);

  Word w;
  StateRef q = q0;
  for (int remaining = length; remaining > 0; --remaining) {
    bool placed = false;
    for (int a = 0; a < sys.spec.alphabet.size(); ++a) {
      auto child = sys.spec.step(q, a);
      if (!child) continue;
      BigCount block = count_u(sys, *child, remaining - 1);
      if (t < block) {
        w.push_back(a);
        q = *child;
        placed = true;
        break;
      }
      t -= block;
    }
    if (!placed) throw std::logic_error("word_at: rank exceeded block counts");
  }
  return w;
}

}  // namespace numerans
