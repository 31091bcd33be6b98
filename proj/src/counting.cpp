#include "numerans/counting.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace numerans {

namespace {

// BFS cone of states reachable from `root` within `max_depth` steps,
// ordered by depth. Rows of the DP are computed over depth prefixes of
// this ordering: u at length m only needs states within depth N - m.
struct Cone {
  std::vector<StateRef> states;          // sorted by BFS depth
  std::vector<int> depth;
  std::vector<std::vector<int>> succ;    // [idx][letter] -> idx, -1 = Dead
  std::vector<std::size_t> count_upto;   // #states with depth <= d
  std::unordered_map<std::int64_t, int> index;
};

Cone build_cone(const AutomatonSpec& spec, StateRef root, int max_depth) {
  Cone cone;
  int k = spec.alphabet.size();
  cone.states.push_back(root);
  cone.depth.push_back(0);
  cone.index.emplace(root.key, 0);
  std::size_t head = 0;
  while (head < cone.states.size()) {
    StateRef q = cone.states[head];
    int d = cone.depth[head];
    ++head;
    if (d == max_depth) continue;
    for (int a = 0; a < k; ++a) {
      auto t = spec.step(q, a);
      if (!t) continue;
      if (cone.index.emplace(t->key, cone.states.size()).second) {
        cone.states.push_back(*t);
        cone.depth.push_back(d + 1);
      }
    }
  }
  cone.count_upto.assign(max_depth + 1, 0);
  for (int d : cone.depth) ++cone.count_upto[d];
  for (int d = 1; d <= max_depth; ++d)
    cone.count_upto[d] += cone.count_upto[d - 1];

  cone.succ.assign(cone.states.size(), std::vector<int>(k, -1));
  for (std::size_t i = 0; i < cone.states.size(); ++i) {
    if (cone.depth[i] == max_depth) continue;  // row 0 only, succ unused
    for (int a = 0; a < k; ++a) {
      auto t = spec.step(cone.states[i], a);
      if (t) cone.succ[i][a] = cone.index.at(t->key);
    }
  }
  return cone;
}

}  // namespace

void CountCache::bind(const AutomatonSpec& spec) {
  int builtin = static_cast<int>(spec.builtin);
  int letters = spec.alphabet.size();
  std::int64_t initial = spec.initial.key;
  if (!bound_) {
    bound_ = true;
    fp_builtin_ = builtin;
    fp_letters_ = letters;
    fp_initial_ = initial;
    return;
  }
  if (fp_builtin_ != builtin || fp_letters_ != letters ||
      fp_initial_ != initial)
    throw input_error("a CountCache serves a single automaton");
}

std::vector<BigCount> CountCache::u_batch(const AutomatonSpec& spec,
                                          StateRef root, int n,
                                          const std::vector<Query>& queries) {
  if (n < 0) throw value_error("word length must be nonnegative");
  std::lock_guard<std::mutex> lock(mu_);
  bind(spec);
  Cone cone = build_cone(spec, root, n);
  int k = spec.alphabet.size();

  // Group queries by length.
  std::vector<std::vector<std::size_t>> by_len(n + 1);
  std::vector<BigCount> answers(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const Query& q = queries[i];
    if (q.len < 0 || q.len > n)
      throw std::logic_error("batched count query length out of range");
    by_len[q.len].push_back(i);
  }
  auto resolve = [&](int m, const std::vector<BigCount>& row) {
    for (std::size_t i : by_len[m]) {
      auto it = cone.index.find(queries[i].state.key);
      if (it == cone.index.end() ||
          cone.depth[it->second] > n - m)
        throw std::logic_error("batched count query outside the DP cone");
      answers[i] = row[it->second];
    }
  };

  std::vector<BigCount> prev(cone.states.size()), cur(cone.states.size());
  for (std::size_t i = 0; i < cone.states.size(); ++i)
    prev[i] = spec.is_final(cone.states[i]) ? 1 : 0;
  resolve(0, prev);

  std::vector<BigCount> root_series;
  root_series.reserve(n + 1);
  root_series.push_back(prev[0]);
  for (int m = 1; m <= n; ++m) {
    std::size_t valid = cone.count_upto[n - m];
    for (std::size_t i = 0; i < valid; ++i) {
      cur[i] = 0;
      for (int a = 0; a < k; ++a) {
        int t = cone.succ[i][a];
        if (t >= 0) cur[i] += prev[t];
      }
    }
    std::swap(prev, cur);
    resolve(m, prev);
    root_series.push_back(prev[0]);
  }

  // Publish the root series as a side effect; inserts are idempotent.
  auto& cached = series_[root.key];
  if (cached.size() < root_series.size()) cached = root_series;

  return answers;
}

const std::vector<BigCount>& CountCache::series(const AutomatonSpec& spec,
                                                StateRef q, int n) {
  auto it = series_.find(q.key);
  if (it != series_.end() && static_cast<int>(it->second.size()) > n)
    return it->second;

  int target = n;
  if (it != series_.end())
    target = std::max(n, 2 * static_cast<int>(it->second.size()));
  Cone cone = build_cone(spec, q, target);
  int k = spec.alphabet.size();

  std::vector<BigCount> prev(cone.states.size()), cur(cone.states.size());
  for (std::size_t i = 0; i < cone.states.size(); ++i)
    prev[i] = spec.is_final(cone.states[i]) ? 1 : 0;
  std::vector<BigCount> out;
  out.reserve(target + 1);
  out.push_back(prev[0]);
  for (int m = 1; m <= target; ++m) {
    std::size_t valid = cone.count_upto[target - m];
    for (std::size_t i = 0; i < valid; ++i) {
      cur[i] = 0;
      for (int a = 0; a < k; ++a) {
        int t = cone.succ[i][a];
        if (t >= 0) cur[i] += prev[t];
      }
    }
    std::swap(prev, cur);
    out.push_back(prev[0]);
  }
  auto& slot = series_[q.key];
  slot = std::move(out);
  return slot;
}

BigCount CountCache::u(const AutomatonSpec& spec, StateRef q, int n) {
  if (n < 0) throw value_error("u is defined for n >= 0");
  std::lock_guard<std::mutex> lock(mu_);
  bind(spec);
  return series(spec, q, n)[n];
}

BigCount CountCache::v(const AutomatonSpec& spec, StateRef q, int n) {
  if (n < 0) throw value_error("v is defined for n >= 0");
  std::lock_guard<std::mutex> lock(mu_);
  bind(spec);
  const auto& s = series(spec, q, n);
  BigCount sum = 0;
  for (int i = 0; i <= n; ++i) sum += s[i];
  return sum;
}

BigCount dyck_u_closed(int m, int n) {
  if (m < 0 || n < 0) throw value_error("dyck_u_closed needs m, n >= 0");
  if (n < m || (n - m) % 2 != 0) return 0;
  BigCount binom;
  mpz_bin_uiui(binom.get_mpz_t(), n + 1, (n - m) / 2);
  binom *= m + 1;
  BigCount out;
  mpz_divexact_ui(out.get_mpz_t(), binom.get_mpz_t(), n + 1);
  return out;
}

std::vector<BigCount> g_sequence(int n) {
  std::vector<BigCount> g;
  g.reserve(n + 1);
  g.push_back(1);
  for (int i = 0; i < n; ++i) {
    // ceil(3x/2)
    BigCount next = (3 * g.back() + 1) / 2;
    g.push_back(next);
  }
  return g;
}

GrowthClass classify(const AutomatonSpec& spec) {
  if (!spec.finite())
    throw unsupported_error("classify requires a finite automaton");
  const auto& states = *spec.finite_states;
  int n = static_cast<int>(states.size());
  int k = spec.alphabet.size();

  std::unordered_map<std::int64_t, int> idx;
  for (int i = 0; i < n; ++i) idx.emplace(states[i].key, i);
  std::vector<std::vector<int>> next(n, std::vector<int>(k, -1));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < k; ++a)
      if (auto t = spec.step(states[i], a)) next[i][a] = idx.at(t->key);

  // Accessible states.
  std::vector<bool> acc(n, false);
  std::vector<int> queue{idx.at(spec.initial.key)};
  acc[queue[0]] = true;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (int a = 0; a < k; ++a) {
      int t = next[queue[h]][a];
      if (t >= 0 && !acc[t]) {
        acc[t] = true;
        queue.push_back(t);
      }
    }

  // Coaccessible states.
  std::vector<std::vector<int>> rev(n);
  for (int v = 0; v < n; ++v)
    for (int a = 0; a < k; ++a)
      if (next[v][a] >= 0) rev[next[v][a]].push_back(v);
  std::vector<bool> coacc(n, false);
  queue.clear();
  for (int v = 0; v < n; ++v)
    if (spec.is_final(states[v])) {
      coacc[v] = true;
      queue.push_back(v);
    }
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (int p : rev[queue[h]])
      if (!coacc[p]) {
        coacc[p] = true;
        queue.push_back(p);
      }

  // Iterative SCC over a state subset.
  auto sccs = [&](const std::vector<bool>& keep) {
    std::vector<int> comp(n, -1), low(n), order(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0, ncomp = 0;
    std::vector<std::pair<int, int>> frames;
    for (int root = 0; root < n; ++root) {
      if (!keep[root] || order[root] >= 0) continue;
      frames.push_back({root, 0});
      while (!frames.empty()) {
        auto& [v, ei] = frames.back();
        if (ei == 0) {
          order[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = true;
        }
        bool descended = false;
        while (ei < k) {
          int w = next[v][ei++];
          if (w < 0 || !keep[w]) continue;
          if (order[w] < 0) {
            frames.push_back({w, 0});
            descended = true;
            break;
          }
          if (on_stack[w]) low[v] = std::min(low[v], order[w]);
        }
        if (descended) continue;
        if (low[v] == order[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
        int child = v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().first] =
              std::min(low[frames.back().first], low[child]);
      }
    }
    return std::make_pair(comp, ncomp);
  };

  // An SCC holds two distinct cycles through one state iff it has more
  // intra-SCC edges than vertices (parallel letter edges counted
  // separately).
  auto multicyclic_info = [&](const std::vector<bool>& keep,
                              const std::vector<int>& comp, int ncomp) {
    std::vector<int> vcount(ncomp, 0), ecount(ncomp, 0);
    std::vector<bool> has_final(ncomp, false);
    for (int v = 0; v < n; ++v) {
      if (!keep[v]) continue;
      ++vcount[comp[v]];
      if (spec.is_final(states[v])) has_final[comp[v]] = true;
      for (int a = 0; a < k; ++a) {
        int w = next[v][a];
        if (w >= 0 && keep[w] && comp[w] == comp[v]) ++ecount[comp[v]];
      }
    }
    std::vector<bool> multi(ncomp);
    for (int c = 0; c < ncomp; ++c) multi[c] = ecount[c] > vcount[c];
    return std::make_pair(multi, has_final);
  };

  GrowthClass out;

  std::vector<bool> trim(n);
  for (int v = 0; v < n; ++v) trim[v] = acc[v] && coacc[v];
  auto [trim_comp, trim_ncomp] = sccs(trim);
  auto [trim_multi, trim_final] = multicyclic_info(trim, trim_comp, trim_ncomp);
  for (int c = 0; c < trim_ncomp; ++c)
    if (trim_multi[c]) out.uncountable_adherence = true;

  auto [acc_comp, acc_ncomp] = sccs(acc);
  auto [acc_multi, acc_final] = multicyclic_info(acc, acc_comp, acc_ncomp);
  for (int c = 0; c < acc_ncomp; ++c)
    if (acc_multi[c] && acc_final[c]) out.uncountable_linfty = true;

  out.kind = out.uncountable_adherence ? GrowthClass::Exponential
                                       : GrowthClass::Polynomial;

  if (out.kind == GrowthClass::Polynomial) {
    // Longest chain of trim SCCs, minus one.
    std::vector<int> chain(trim_ncomp, 1);
    // Tarjan numbers components in reverse topological order, so
    // iterate components in increasing order and relax predecessors.
    for (int c = 0; c < trim_ncomp; ++c) {
      for (int v = 0; v < n; ++v) {
        if (!trim[v] || trim_comp[v] != c) continue;
        for (int a = 0; a < k; ++a) {
          int w = next[v][a];
          if (w >= 0 && trim[w] && trim_comp[w] != c)
            chain[c] = std::max(chain[c], chain[trim_comp[w]] + 1);
        }
      }
    }
    for (int c = 0; c < trim_ncomp; ++c)
      out.degree_bound = std::max(out.degree_bound, chain[c] - 1);
  }
  return out;
}

}  // namespace numerans
