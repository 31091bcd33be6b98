#include "numerans/automaton.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <sstream>

namespace numerans {

std::optional<StateRef> step_word(const AutomatonSpec& spec, StateRef from,
                                  const Word& w) {
  std::optional<StateRef> q = from;
  for (int a : w) {
    if (a < 0 || a >= spec.alphabet.size())
      throw input_error("letter rank out of range for this alphabet");
    q = spec.step(*q, a);
    if (!q) return std::nullopt;
  }
  return q;
}

std::optional<StateRef> step_word(const AutomatonSpec& spec, const Word& w) {
  return step_word(spec, spec.initial, w);
}

bool accepts(const AutomatonSpec& spec, const Word& w) {
  auto q = step_word(spec, w);
  return q && spec.is_final(*q);
}

AutomatonSpec full_binary() {
  AutomatonSpec spec;
  spec.alphabet = Alphabet{"a", "b"};
  spec.initial = StateRef{0};
  spec.step = [](StateRef, int) { return std::optional<StateRef>(StateRef{0}); };
  spec.is_final = [](StateRef) { return true; };
  spec.is_live = [](StateRef) { return true; };
  spec.label = [](StateRef) { return std::string("q0"); };
  spec.finite_states = std::vector<StateRef>{StateRef{0}};
  spec.builtin = Builtin::FullBinary;
  return spec;
}

AutomatonSpec integer_base(int b) {
  if (b < 2) throw input_error("integer base must be at least 2");
  AutomatonSpec spec;
  std::vector<std::string> digits;
  for (int d = 0; d < b; ++d) digits.push_back(std::to_string(d));
  spec.alphabet = Alphabet(digits);
  spec.initial = StateRef{0};  // 0 = init, 1 = inner
  spec.step = [](StateRef q, int d) -> std::optional<StateRef> {
    if (q.key == 0 && d == 0) return std::nullopt;  // no leading zero
    return StateRef{1};
  };
  spec.is_final = [](StateRef) { return true; };
  spec.is_live = [](StateRef) { return true; };
  spec.label = [](StateRef q) {
    return std::string(q.key == 0 ? "init" : "inner");
  };
  spec.finite_states = std::vector<StateRef>{StateRef{0}, StateRef{1}};
  spec.builtin = Builtin::IntegerBase;
  spec.base = b;
  return spec;
}

namespace {

AutomatonSpec dyck_common() {
  AutomatonSpec spec;
  spec.alphabet = Alphabet{"a", "b"};
  spec.initial = StateRef{0};  // key = nesting level
  spec.step = [](StateRef q, int a) -> std::optional<StateRef> {
    if (a == 0) return StateRef{q.key + 1};
    if (q.key == 0) return std::nullopt;
    return StateRef{q.key - 1};
  };
  spec.is_live = [](StateRef) { return true; };
  spec.label = [](StateRef q) { return "p" + std::to_string(q.key); };
  return spec;
}

}  // namespace

AutomatonSpec dyck_prefix() {
  AutomatonSpec spec = dyck_common();
  spec.is_final = [](StateRef) { return true; };
  spec.builtin = Builtin::DyckPrefix;
  return spec;
}

AutomatonSpec dyck_proper() {
  AutomatonSpec spec = dyck_common();
  spec.is_final = [](StateRef q) { return q.key == 0; };
  spec.label = [](StateRef q) { return "d" + std::to_string(q.key); };
  spec.builtin = Builtin::DyckProper;
  return spec;
}

AutomatonSpec rational_base_3_2() {
  AutomatonSpec spec;
  spec.alphabet = Alphabet{"0", "1", "2"};
  spec.initial = StateRef{0};  // key = represented integer
  spec.step = [](StateRef q, int d) -> std::optional<StateRef> {
    // Only digit 2 leaves the initial state: canonical representations
    // carry no leading zeros.
    if (q.key == 0 && d != 2) return std::nullopt;
    std::int64_t t = 3 * q.key + d;
    if (t % 2 != 0) return std::nullopt;
    return StateRef{t / 2};
  };
  spec.is_final = [](StateRef) { return true; };
  spec.is_live = [](StateRef) { return true; };
  spec.label = [](StateRef q) { return std::to_string(q.key); };
  spec.builtin = Builtin::RationalBase32;
  return spec;
}

AutomatonSpec balanced_diff() {
  AutomatonSpec spec;
  spec.alphabet = Alphabet{"a", "b"};
  spec.initial = StateRef{0};  // key = |prefix|_a - |prefix|_b
  spec.step = [](StateRef q, int a) -> std::optional<StateRef> {
    return StateRef{q.key + (a == 0 ? 1 : -1)};
  };
  spec.is_final = [](StateRef q) { return q.key >= -1 && q.key <= 1; };
  spec.is_live = [](StateRef) { return true; };
  spec.label = [](StateRef q) { return std::to_string(q.key); };
  spec.builtin = Builtin::BalancedDiff;
  return spec;
}

AutomatonSpec half_prefix_demo() {
  // Language of the words a^{floor(n/2)}u of length n. Even keys 2k are
  // the a-run states, odd keys 2j+1 allow j more letters.
  AutomatonSpec spec;
  spec.alphabet = Alphabet{"a", "b"};
  spec.initial = StateRef{0};
  spec.step = [](StateRef q, int a) -> std::optional<StateRef> {
    if (q.key % 2 == 0) {
      std::int64_t k = q.key / 2;
      if (a == 0) return StateRef{2 * (k + 1)};
      return StateRef{2 * k + 1};
    }
    std::int64_t j = (q.key - 1) / 2;
    if (j == 0) return std::nullopt;
    return StateRef{2 * (j - 1) + 1};
  };
  spec.is_final = [](StateRef) { return true; };
  spec.is_live = [](StateRef q) { return q.key % 2 == 0; };
  spec.label = [](StateRef q) {
    if (q.key % 2 == 0) return "run" + std::to_string(q.key / 2);
    return "tail" + std::to_string((q.key - 1) / 2);
  };
  spec.builtin = Builtin::HalfPrefixDemo;
  return spec;
}

namespace {

struct DfaTable {
  Alphabet alphabet;
  std::vector<std::string> names;
  int initial = -1;
  std::vector<bool> final;
  std::vector<std::vector<int>> next;  // [state][letter] -> state or -1
};

// A state is live iff it reaches a state that lies on a cycle and is
// coaccessible: such a state can be pumped toward a final state.
std::vector<bool> compute_liveness(const DfaTable& t) {
  int n = static_cast<int>(t.names.size());
  int k = t.alphabet.size();

  // Tarjan SCC.
  std::vector<int> comp(n, -1), low(n), idx(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0, ncomp = 0;
  std::vector<std::pair<int, int>> frames;
  for (int root = 0; root < n; ++root) {
    if (idx[root] >= 0) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      auto& [v, ei] = frames.back();
      if (ei == 0) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (ei < k) {
        int w = t.next[v][ei++];
        if (w < 0) continue;
        if (idx[w] < 0) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], idx[w]);
      }
      if (descended) continue;
      if (low[v] == idx[v]) {
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
        low[frames.back().first] = std::min(low[frames.back().first], low[child]);
    }
  }

  std::vector<int> comp_size(ncomp, 0);
  for (int v = 0; v < n; ++v) ++comp_size[comp[v]];
  std::vector<bool> on_cycle(n, false);
  for (int v = 0; v < n; ++v) {
    if (comp_size[comp[v]] > 1) {
      on_cycle[v] = true;
      continue;
    }
    for (int a = 0; a < k; ++a)
      if (t.next[v][a] == v) on_cycle[v] = true;
  }

  // Coaccessible: reaches a final state (reverse BFS from finals).
  std::vector<std::vector<int>> rev(n);
  for (int v = 0; v < n; ++v)
    for (int a = 0; a < k; ++a)
      if (t.next[v][a] >= 0) rev[t.next[v][a]].push_back(v);
  std::vector<bool> coacc(n, false);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (t.final[v]) {
      coacc[v] = true;
      queue.push_back(v);
    }
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (int p : rev[queue[h]])
      if (!coacc[p]) {
        coacc[p] = true;
        queue.push_back(p);
      }

  // Live: reaches a pumpable coaccessible state.
  std::vector<bool> live(n, false);
  queue.clear();
  for (int v = 0; v < n; ++v)
    if (on_cycle[v] && coacc[v]) {
      live[v] = true;
      queue.push_back(v);
    }
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (int p : rev[queue[h]])
      if (!live[p]) {
        live[p] = true;
        queue.push_back(p);
      }
  return live;
}

}  // namespace

AutomatonSpec parse_dfa_file(const std::string& text) {
  auto table = std::make_shared<DfaTable>();
  std::map<std::string, int> state_id;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = state_id.emplace(name, table->names.size());
    if (inserted) table->names.push_back(name);
    return it->second;
  };

  std::vector<std::string> letters;
  std::string initial_name;
  std::vector<std::string> final_names;
  std::vector<std::array<std::string, 3>> transitions;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw input_error("line " + std::to_string(lineno) + ": " + msg);
    };
    if (head == "alphabet:") {
      std::string tok;
      while (ls >> tok) letters.push_back(tok);
    } else if (head == "initial:") {
      if (!(ls >> initial_name)) fail("missing initial state name");
      std::string extra;
      if (ls >> extra) fail("initial: takes a single state");
    } else if (head == "finals:") {
      std::string tok;
      while (ls >> tok) final_names.push_back(tok);
    } else if (head == "trans:") {
      std::array<std::string, 3> tr;
      if (!(ls >> tr[0] >> tr[1] >> tr[2])) fail("trans: needs 'src letter dst'");
      std::string extra;
      if (ls >> extra) fail("trans: needs exactly 'src letter dst'");
      transitions.push_back(tr);
    } else {
      fail("unknown directive '" + head + "'");
    }
  }

  if (letters.empty()) throw input_error("missing alphabet: line");
  if (initial_name.empty()) throw input_error("missing initial: line");
  table->alphabet = Alphabet(letters);
  int k = table->alphabet.size();

  intern(initial_name);
  for (const auto& tr : transitions) {
    intern(tr[0]);
    intern(tr[2]);
  }
  int n = static_cast<int>(table->names.size());
  table->next.assign(n, std::vector<int>(k, -1));
  table->final.assign(n, false);
  for (const auto& name : final_names) {
    auto it = state_id.find(name);
    if (it == state_id.end())
      throw input_error("final state '" + name + "' never mentioned");
    table->final[it->second] = true;
  }
  for (const auto& tr : transitions) {
    int src = state_id.at(tr[0]);
    int a = table->alphabet.rank_of(tr[1]);
    int dst = state_id.at(tr[2]);
    if (table->next[src][a] != -1)
      throw input_error("nondeterministic: two transitions from '" + tr[0] +
                        "' on '" + tr[1] + "'");
    table->next[src][a] = dst;
  }
  table->initial = state_id.at(initial_name);

  auto live = std::make_shared<std::vector<bool>>(compute_liveness(*table));

  AutomatonSpec spec;
  spec.alphabet = table->alphabet;
  spec.initial = StateRef{table->initial};
  spec.step = [table](StateRef q, int a) -> std::optional<StateRef> {
    int dst = table->next[q.key][a];
    if (dst < 0) return std::nullopt;
    return StateRef{dst};
  };
  spec.is_final = [table](StateRef q) { return table->final[q.key]; };
  spec.is_live = [live](StateRef q) { return (*live)[q.key]; };
  spec.label = [table](StateRef q) { return table->names[q.key]; };
  std::vector<StateRef> states;
  for (int v = 0; v < n; ++v) states.push_back(StateRef{v});
  spec.finite_states = std::move(states);
  return spec;
}

}  // namespace numerans
