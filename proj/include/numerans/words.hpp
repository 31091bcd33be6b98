#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace numerans {

/// Malformed user input (bad word literal, bad file syntax, unknown letter).
/// CLI maps this to exit code 1.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Well-formed input outside an operation's domain (word not in the
/// language, precondition violation, ambiguous boundary). Exit code 2.
struct value_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation not available for this system (e.g. classify on an
/// infinite automaton).
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Totally ordered alphabet. The order of `letters` is the order <
/// used everywhere; rank(letter) is its index.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);
  Alphabet(std::initializer_list<std::string> letters)
      : Alphabet(std::vector<std::string>(letters)) {}

  int size() const { return static_cast<int>(letters_.size()); }
  const std::string& letter(int rank) const { return letters_.at(rank); }
  const std::vector<std::string>& letters() const { return letters_; }

  // Throws input_error on unknown tokens.
  int rank_of(std::string_view token) const;
  bool contains(std::string_view token) const;

  // True when every letter is a single character, so words can be
  // written without separators.
  bool single_char() const { return single_char_; }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, int> rank_;
  bool single_char_ = true;
};

/// A finite word, stored as letter ranks of some alphabet.
using Word = std::vector<int>;

/// Parses a word literal. Single-char alphabets accept contiguous
/// spelling ("aab"); any alphabet accepts whitespace-separated tokens.
/// "" and "eps" denote the empty word.
Word parse_word(const Alphabet& sigma, std::string_view text);
std::string format_word(const Alphabet& sigma, const Word& w);

/// Ultimately periodic infinite word: preperiod . period . period ...
class UPWord {
 public:
  UPWord(Word preperiod, Word period);

  const Word& preperiod() const { return preperiod_; }
  const Word& period() const { return period_; }

  // Letter at position i of the infinite word.
  int at(std::size_t i) const;
  Word prefix(std::size_t n) const;

 private:
  Word preperiod_;
  Word period_;  // nonempty
};

/// Parses "pre(per)^w"; empty preperiod written "(per)^w".
UPWord parse_up_word(const Alphabet& sigma, std::string_view text);
std::string format_up_word(const Alphabet& sigma, const UPWord& w);

enum class Ordering { Less, Equal, Greater };

/// Genealogical (radix) order: by length, then lexicographically.
Ordering radix_compare(const Word& a, const Word& b);

/// Lexicographic order on the infinite expansions.
Ordering lex_compare(const UPWord& a, const UPWord& b);

}  // namespace numerans
