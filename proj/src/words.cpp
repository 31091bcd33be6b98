#include "numerans/words.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace numerans {

Alphabet::Alphabet(std::vector<std::string> letters)
    : letters_(std::move(letters)) {
  if (letters_.empty()) throw input_error("alphabet must be nonempty");
  for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
    const std::string& tok = letters_[i];
    if (tok.empty()) throw input_error("alphabet letter must be nonempty");
    if (!rank_.emplace(tok, i).second)
      throw input_error("duplicate alphabet letter '" + tok + "'");
    if (tok.size() > 1) single_char_ = false;
  }
}

int Alphabet::rank_of(std::string_view token) const {
  auto it = rank_.find(std::string(token));
  if (it == rank_.end())
    throw input_error("unknown letter '" + std::string(token) + "'");
  return it->second;
}

bool Alphabet::contains(std::string_view token) const {
  return rank_.count(std::string(token)) != 0;
}

Word parse_word(const Alphabet& sigma, std::string_view text) {
  if (text == "eps" || text == "ε") return {};
  Word w;
  if (text.find_first_of(" \t") == std::string_view::npos &&
      sigma.single_char()) {
    for (char c : text) w.push_back(sigma.rank_of(std::string_view(&c, 1)));
    return w;
  }
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) w.push_back(sigma.rank_of(tok));
  return w;
}

std::string format_word(const Alphabet& sigma, const Word& w) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !sigma.single_char()) out += ' ';
    out += sigma.letter(w[i]);
  }
  return out;
}

UPWord::UPWord(Word preperiod, Word period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw input_error("period of an UPWord must be nonempty");
}

int UPWord::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

Word UPWord::prefix(std::size_t n) const {
  Word w;
  w.reserve(n);
  for (std::size_t i = 0; i < n; ++i) w.push_back(at(i));
  return w;
}

UPWord parse_up_word(const Alphabet& sigma, std::string_view text) {
  auto open = text.find('(');
  auto close = text.find(')');
  if (open == std::string_view::npos || close == std::string_view::npos ||
      close < open || text.substr(close + 1) != "^w")
    throw input_error("UPWord literal must look like pre(per)^w: '" +
                      std::string(text) + "'");
  Word pre = parse_word(sigma, text.substr(0, open));
  Word per = parse_word(sigma, text.substr(open + 1, close - open - 1));
  return UPWord(std::move(pre), std::move(per));
}

std::string format_up_word(const Alphabet& sigma, const UPWord& w) {
  std::string out;
  if (!w.preperiod().empty()) out += format_word(sigma, w.preperiod());
  out += '(';
  out += format_word(sigma, w.period());
  out += ")^w";
  return out;
}

Ordering radix_compare(const Word& a, const Word& b) {
  if (a.size() != b.size())
    return a.size() < b.size() ? Ordering::Less : Ordering::Greater;
  if (a < b) return Ordering::Less;
  if (b < a) return Ordering::Greater;
  return Ordering::Equal;
}

Ordering lex_compare(const UPWord& a, const UPWord& b) {
  // Two ultimately periodic words agreeing on a prefix of this length
  // are equal.
  std::size_t pa = a.period().size(), pb = b.period().size();
  std::size_t bound = std::max(a.preperiod().size(), b.preperiod().size()) +
                      std::lcm(pa, pb) + 1;
  for (std::size_t i = 0; i < bound; ++i) {
    int x = a.at(i), y = b.at(i);
    if (x != y) return x < y ? Ordering::Less : Ordering::Greater;
  }
  return Ordering::Equal;
}

}  // namespace numerans
