#include "numerans/oracle.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace numerans {

namespace {

// Deliberately naive memoized count of accepted length-n words from q,
// written independently of CountCache so the two can check each other.
class NaiveCounter {
 public:
  explicit NaiveCounter(const AutomatonSpec& spec) : spec_(spec) {}

  BigCount u(StateRef q, int n) {
    if (n == 0) return spec_.is_final(q) ? 1 : 0;
    auto key = std::make_pair(q.key, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    BigCount total = 0;
    for (int a = 0; a < spec_.alphabet.size(); ++a)
      if (auto t = spec_.step(q, a)) total += u(*t, n - 1);
    return memo_.emplace(key, std::move(total)).first->second;
  }

  BigCount v(StateRef q, int n) {
    BigCount total = 0;
    for (int m = 0; m <= n; ++m) total += u(q, m);
    return total;
  }

 private:
  const AutomatonSpec& spec_;
  std::map<std::pair<std::int64_t, int>, BigCount> memo_;
};

}  // namespace

EnumeratedLanguage enumerate_upto(const NumerationSystem& sys, int n,
                                  std::size_t guard) {
  if (n < 0) throw value_error("enumeration length must be nonnegative");
  const AutomatonSpec& spec = sys.spec;

  EnumeratedLanguage out;
  out.max_length = n;
  out.offsets.push_back(0);

  // Frontier of prefixes; extending in alphabet order keeps each level
  // lexicographically sorted, hence the whole list radix-sorted.
  std::vector<std::pair<Word, StateRef>> frontier{{Word{}, spec.initial}};
  std::size_t explored = 1;
  for (int l = 0; l <= n; ++l) {
    for (const auto& [w, q] : frontier)
      if (spec.is_final(q)) out.words.push_back(w);
    out.offsets.push_back(out.words.size());
    if (l == n) break;
    std::vector<std::pair<Word, StateRef>> next;
    for (const auto& [w, q] : frontier)
      for (int a = 0; a < spec.alphabet.size(); ++a) {
        auto t = spec.step(q, a);
        if (!t) continue;
        if (++explored > guard)
          throw value_error("enumeration guard exceeded (" +
                            std::to_string(guard) + " prefixes)");
        Word xw = w;
        xw.push_back(a);
        next.emplace_back(std::move(xw), *t);
      }
    frontier = std::move(next);
  }
  return out;
}

BigCount brute_value(const NumerationSystem& sys, const Word& w) {
  int n = static_cast<int>(w.size());
  EnumeratedLanguage lang = enumerate_upto(sys, n);
  auto begin = lang.words.begin() +
               static_cast<std::ptrdiff_t>(lang.offsets[static_cast<std::size_t>(n)]);
  auto end = lang.words.begin() +
             static_cast<std::ptrdiff_t>(lang.offsets[static_cast<std::size_t>(n) + 1]);
  auto it = std::lower_bound(begin, end, w);
  if (it == end || *it != w)
    throw value_error("word is not in the language");
  return BigCount(static_cast<long>(it - lang.words.begin()));
}

Ratio alpha_fin(const NumerationSystem& sys, const Word& y, int n) {
  const AutomatonSpec& spec = sys.spec;
  int l = static_cast<int>(y.size());
  if (n < l) throw value_error("alpha_fin needs n >= |y|");
  {
    auto q = step_word(spec, y);
    if (!q || !spec.is_live(*q))
      throw value_error("alpha_fin is defined on center words only");
  }

  NaiveCounter counter(spec);
  BigCount vn = counter.v(spec.initial, n);
  Ratio total = (n == 0) ? Ratio(0) : Ratio(counter.v(spec.initial, n - 1), vn);
  total.canonicalize();

  // Enumerate the length-l center words lexicographically below y.
  Word x;
  std::function<void(StateRef)> walk = [&](StateRef q) {
    int depth = static_cast<int>(x.size());
    if (depth == l) return;
    int limit = spec.alphabet.size();
    // Only branches that can still be < y matter: on the boundary path
    // (x == y so far) letters above y[depth] are too large.
    bool on_boundary = std::equal(x.begin(), x.end(), y.begin());
    if (on_boundary) limit = y[depth] + 1;
    for (int a = 0; a < limit; ++a) {
      auto t = spec.step(q, a);
      if (!t) continue;
      x.push_back(a);
      if (static_cast<int>(x.size()) == l) {
        if (x < y && spec.is_live(*t)) {
          Ratio term(counter.u(*t, n - l), vn);
          term.canonicalize();
          total += term;
        }
      } else {
        walk(*t);
      }
      x.pop_back();
    }
  };
  walk(spec.initial);
  return total;
}

}  // namespace numerans
