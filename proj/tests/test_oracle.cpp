#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "numerans/oracle.hpp"

using namespace numerans;

namespace {

Word w(const NumerationSystem& sys, const std::string& text) {
  return parse_word(sys.alphabet(), text);
}

}  // namespace

TEST_CASE("dyck enumeration up to length 3") {
  NumerationSystem sys = builtin_system("dyck");
  EnumeratedLanguage lang = enumerate_upto(sys, 3);
  std::vector<std::string> expect{"eps", "a",   "aa", "ab",
                                  "aaa", "aab", "aba"};
  REQUIRE(lang.words.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(format_word(sys.alphabet(), lang.words[i]) == expect[i]);
  CHECK(lang.count_of_length(0) == 1);
  CHECK(lang.count_of_length(3) == 3);
}

TEST_CASE("balanced and 3/2 enumerations match the worked examples") {
  NumerationSystem balanced = builtin_system("balanced");
  EnumeratedLanguage lb = enumerate_upto(balanced, 2);
  std::vector<std::string> expect{"eps", "a", "b", "ab", "ba"};
  REQUIRE(lb.words.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(format_word(balanced.alphabet(), lb.words[i]) == expect[i]);

  NumerationSystem th = builtin_system("three-halves");
  EnumeratedLanguage lt = enumerate_upto(th, 2);
  REQUIRE(lt.words.size() == 3);
  CHECK(format_word(th.alphabet(), lt.words[1]) == "2");
  CHECK(format_word(th.alphabet(), lt.words[2]) == "21");
}

TEST_CASE("enumeration counts per length equal count_u") {
  for (const std::string name : {"dyck", "balanced", "three-halves"}) {
    NumerationSystem sys = builtin_system(name);
    EnumeratedLanguage lang = enumerate_upto(sys, 8);
    for (int l = 0; l <= 8; ++l) {
      CAPTURE(name);
      CHECK(BigCount(static_cast<long>(lang.count_of_length(l))) ==
            count_u(sys, sys.spec.initial, l));
    }
  }
}

TEST_CASE("the guard is a hard error") {
  NumerationSystem sys = builtin_system("full-binary");
  CHECK_THROWS_AS(enumerate_upto(sys, 30, 1000), value_error);
}

TEST_CASE("brute_value indices") {
  NumerationSystem dyck = builtin_system("dyck");
  CHECK(brute_value(dyck, {}) == 0);
  CHECK(brute_value(dyck, w(dyck, "aab")) == 5);
  CHECK_THROWS_AS(brute_value(dyck, w(dyck, "ba")), value_error);

  NumerationSystem th = builtin_system("three-halves");
  CHECK(brute_value(th, w(th, "212")) == 4);
}

TEST_CASE("alpha_fin worked examples") {
  NumerationSystem sys = builtin_system("dyck");
  CHECK(alpha_fin(sys, w(sys, "ab"), 2) == Ratio(3, 4));
  CHECK(alpha_fin(sys, w(sys, "a"), 1) == Ratio(1, 2));
  // Converges toward alpha_{aab} = 3/4, at the slow 1/sqrt(n) rate of
  // the central-binomial correction terms.
  Ratio far = alpha_fin(sys, w(sys, "aab"), 40);
  Ratio gap = far - Ratio(3, 4);
  if (gap < 0) gap = -gap;
  CHECK(gap < Ratio(1, 100));
}

TEST_CASE("alpha_fin is non-decreasing along prefixes at fixed n") {
  NumerationSystem sys = builtin_system("dyck");
  const int n = 40;
  Word y;
  Ratio prev(0);
  for (int l = 0; l < 12; ++l) {
    y.push_back(l % 3 == 2 ? 1 : 0);  // prefixes of (aab)^w
    Ratio cur = alpha_fin(sys, y, n);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("alpha_fin preconditions") {
  NumerationSystem sys = builtin_system("dyck");
  CHECK_THROWS_AS(alpha_fin(sys, w(sys, "aab"), 2), value_error);
  CHECK_THROWS_AS(alpha_fin(sys, w(sys, "ba"), 5), value_error);
}
