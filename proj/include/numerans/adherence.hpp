#pragma once

#include <optional>
#include <string>

#include "numerans/numeration.hpp"

namespace numerans {

/// Minimal/maximal adherence word: exact when ultimate periodicity is
/// certified (finite-DFA state repetition or a builtin closed form),
/// otherwise a prefix of the stated depth.
struct AdherenceWord {
  std::optional<UPWord> exact;
  Word prefix;  // the greedy prefix when not exact
  long depth = 0;
  std::string note;

  bool is_exact() const { return exact.has_value(); }
};

enum class UPStatus { InAdherence, NotInAdherence, Undetermined };

struct UPValidation {
  UPStatus status;
  long depth = 0;  // positions examined
};

/// True iff w is a prefix of infinitely many words of L, i.e. the state
/// reached is non-Dead and Live.
bool center_member(const NumerationSystem& sys, const Word& w);

/// m_y / M_y: lexicographically least / greatest adherence word with
/// prefix y. Precondition: center_member(y).
AdherenceWord min_word(const NumerationSystem& sys, const Word& y,
                       long cap = 1000000);
AdherenceWord max_word(const NumerationSystem& sys, const Word& y,
                       long cap = 1000000);

/// Walks preperiod then period; decides adherence membership when a
/// (state, position-in-period) pair repeats through Live states, or via
/// the Dyck level-drift certificate. Undetermined once `limit`
/// positions have been examined on unbounded-state builtins.
UPValidation validate_up_word(const NumerationSystem& sys, const UPWord& w,
                              long limit = 100000);

}  // namespace numerans
