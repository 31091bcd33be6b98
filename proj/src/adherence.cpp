#include "numerans/adherence.hpp"

#include <unordered_map>

namespace numerans {

bool center_member(const NumerationSystem& sys, const Word& w) {
  auto q = step_word(sys.spec, w);
  return q && sys.spec.is_live(*q);
}

namespace {

constexpr const char* kNoPeriodicAdherence =
    "the adherence of the 3/2 system contains no ultimately periodic word; "
    "returning a greedy prefix";

AdherenceWord greedy_extreme(const NumerationSystem& sys, const Word& y,
                             bool minimal, long cap) {
  if (!center_member(sys, y))
    throw value_error("min/max adherence word needs a center word prefix");

  const AutomatonSpec& spec = sys.spec;
  int k = spec.alphabet.size();

  if (spec.builtin == Builtin::DyckPrefix || spec.builtin == Builtin::DyckProper) {
    // m_y = y a^w; M_y = y b^level (ab)^w.
    StateRef q = *step_word(spec, y);
    if (minimal) return {UPWord(y, Word{0}), {}, 0, ""};
    Word pre = y;
    for (std::int64_t level = q.key; level > 0; --level) pre.push_back(1);
    return {UPWord(std::move(pre), Word{0, 1}), {}, 0, ""};
  }

  // Greedy walk; a repeated state certifies ultimate periodicity
  // because the letter chosen depends on the state alone.
  StateRef q = *step_word(spec, y);
  Word letters = y;
  std::unordered_map<std::int64_t, std::size_t> seen;  // state -> position
  seen.emplace(q.key, letters.size());
  for (long step = 0; step < cap; ++step) {
    bool moved = false;
    for (int i = 0; i < k && !moved; ++i) {
      int a = minimal ? i : k - 1 - i;
      auto t = spec.step(q, a);
      if (t && spec.is_live(*t)) {
        letters.push_back(a);
        q = *t;
        moved = true;
      }
    }
    if (!moved)
      throw std::logic_error("live state without a live successor");
    auto [it, fresh] = seen.emplace(q.key, letters.size());
    if (!fresh) {
      std::size_t start = it->second;
      Word pre(letters.begin(), letters.begin() + start);
      Word per(letters.begin() + start, letters.end());
      // Shift the period left over an agreeing preperiod tail so the
      // certificate is in its shortest-preperiod form, e.g. b(b)^w -> (b)^w.
      while (!pre.empty() && pre.back() == per.back()) {
        pre.pop_back();
        per.insert(per.begin(), per.back());
        per.pop_back();
      }
      return {UPWord(std::move(pre), std::move(per)), {}, 0, ""};
    }
  }
  std::string note = spec.builtin == Builtin::RationalBase32
                         ? kNoPeriodicAdherence
                         : "no periodicity certificate within the depth cap";
  return {std::nullopt, std::move(letters), cap, std::move(note)};
}

}  // namespace

AdherenceWord min_word(const NumerationSystem& sys, const Word& y, long cap) {
  return greedy_extreme(sys, y, true, cap);
}

AdherenceWord max_word(const NumerationSystem& sys, const Word& y, long cap) {
  return greedy_extreme(sys, y, false, cap);
}

UPValidation validate_up_word(const NumerationSystem& sys, const UPWord& w,
                              long limit) {
  const AutomatonSpec& spec = sys.spec;

  if (spec.builtin == Builtin::DyckPrefix ||
      spec.builtin == Builtin::DyckProper) {
    // Level-drift certificate: if one full period survives from level l
    // with net drift >= 0, every later period starts at least as high
    // and survives too. Negative drift sinks below level 0 eventually.
    auto q = step_word(spec, w.preperiod());
    if (!q) return {UPStatus::NotInAdherence,
                    static_cast<long>(w.preperiod().size())};
    std::int64_t level = q->key;
    std::int64_t entry = level;
    long pos = static_cast<long>(w.preperiod().size());
    for (int a : w.period()) {
      level += (a == 0) ? 1 : -1;
      ++pos;
      if (level < 0) return {UPStatus::NotInAdherence, pos};
    }
    if (level >= entry) return {UPStatus::InAdherence, pos};
    return {UPStatus::NotInAdherence, pos};
  }

  auto q = step_word(spec, w.preperiod());
  long pos = static_cast<long>(w.preperiod().size());
  if (!q || !spec.is_live(*q)) return {UPStatus::NotInAdherence, pos};

  // The balanced-difference automaton is complete and every state is
  // live, so every infinite word lies in the adherence.
  if (spec.builtin == Builtin::BalancedDiff) return {UPStatus::InAdherence, pos};

  std::size_t per = w.period().size();
  std::unordered_map<std::int64_t, std::size_t> seen_at_phase0;
  seen_at_phase0.emplace(q->key, 0);
  // Walk whole periods; a repeated state at the period boundary with
  // all intermediate states Live certifies membership.
  while (pos < limit) {
    for (std::size_t j = 0; j < per; ++j) {
      q = spec.step(*q, w.period()[j]);
      ++pos;
      if (!q || !spec.is_live(*q))
        return {UPStatus::NotInAdherence, pos};
    }
    if (!seen_at_phase0.emplace(q->key, pos).second)
      return {UPStatus::InAdherence, pos};
  }
  return {UPStatus::Undetermined, pos};
}

}  // namespace numerans
