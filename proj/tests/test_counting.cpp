#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "numerans/counting.hpp"

using namespace numerans;

namespace {

BigCount binom(unsigned long n, unsigned long k) {
  BigCount b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

TEST_CASE("full binary counts are powers of two") {
  AutomatonSpec spec = full_binary();
  CountCache cache;
  for (int n = 0; n <= 20; ++n) {
    BigCount expect = 1;
    expect <<= n;
    CHECK(cache.u(spec, spec.initial, n) == expect);
    CHECK(cache.v(spec, spec.initial, n) == 2 * expect - 1);
  }
}

TEST_CASE("dyck prefix counts match the central binomials") {
  // u_{p_0}(n) = C(n, floor(n/2)): ballot-style prefix counts.
  AutomatonSpec spec = dyck_prefix();
  CountCache cache;
  for (int n = 0; n <= 24; ++n) {
    BigCount expect = binom(n, n / 2);
    CHECK(cache.u(spec, spec.initial, n) == expect);
  }
  CHECK(cache.v(spec, spec.initial, 3) == 7);
  CHECK(cache.v(spec, spec.initial, 15) == 13495);
}

TEST_CASE("proper dyck counts match the closed form") {
  AutomatonSpec spec = dyck_proper();
  CountCache cache;
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 16; ++n)
      CHECK(cache.u(spec, StateRef{m}, n) == dyck_u_closed(m, n));
  // Catalan numbers along m = 0, n = 2k.
  CHECK(dyck_u_closed(0, 10) == 42);
  CHECK(dyck_u_closed(0, 12) == 132);
  CHECK(dyck_u_closed(1, 3) == 2);
  CHECK(dyck_u_closed(0, 3) == 0);
}

TEST_CASE("prefix counts satisfy u_p(n) = 2 u_p(n-1) - u_d(n-1)") {
  AutomatonSpec spec = dyck_prefix();
  CountCache cache;
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 16; ++n) {
      BigCount up = cache.u(spec, StateRef{m}, n);
      if (n <= m) {
        BigCount expect = 1;
        expect <<= n;
        CHECK(up == expect);  // no b can die this early
      } else {
        CHECK(up == 2 * cache.u(spec, StateRef{m}, n - 1) -
                        dyck_u_closed(m, n - 1));
      }
    }
  }
}

TEST_CASE("3/2 counting sequence") {
  std::vector<BigCount> g = g_sequence(8);
  std::vector<long> expect{1, 2, 3, 5, 8, 12, 18, 27, 41};
  REQUIRE(g.size() == expect.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == expect[i]);

  AutomatonSpec spec = rational_base_3_2();
  CountCache cache;
  std::vector<BigCount> g30 = g_sequence(30);
  for (int n = 0; n <= 30; ++n)
    CHECK(cache.v(spec, spec.initial, n) == g30[static_cast<std::size_t>(n)]);
}

TEST_CASE("batched queries agree with point queries") {
  AutomatonSpec spec = dyck_prefix();
  CountCache batched, pointwise;
  // Sibling-style queries: state at depth d asked for length n - d.
  int n = 12;
  std::vector<CountCache::Query> queries;
  for (int d = 1; d <= n; ++d)
    queries.push_back({StateRef{d % 3}, n - d});
  std::vector<BigCount> got = batched.u_batch(spec, spec.initial, n, queries);
  REQUIRE(got.size() == queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i)
    CHECK(got[i] == pointwise.u(spec, queries[i].state, queries[i].len));
}

TEST_CASE("negative lengths are rejected") {
  AutomatonSpec spec = full_binary();
  CountCache cache;
  CHECK_THROWS_AS(cache.u(spec, spec.initial, -1), value_error);
  CHECK_THROWS_AS(cache.v(spec, spec.initial, -1), value_error);
}

TEST_CASE("classification: exponential languages with uncountable adherence") {
  GrowthClass g = classify(full_binary());
  CHECK(g.kind == GrowthClass::Exponential);
  CHECK(g.uncountable_adherence);
  CHECK(g.uncountable_linfty);

  GrowthClass gb = classify(integer_base(2));
  CHECK(gb.kind == GrowthClass::Exponential);
  CHECK(gb.uncountable_adherence);
  CHECK(gb.uncountable_linfty);
}

TEST_CASE("classification: polynomial slender-style languages") {
  AutomatonSpec ab = parse_dfa_file(R"(
alphabet: a b
initial: q0
finals: q0 q1
trans: q0 a q0
trans: q0 b q1
trans: q1 b q1
)");
  GrowthClass g = classify(ab);
  CHECK(g.kind == GrowthClass::Polynomial);
  CHECK_FALSE(g.uncountable_adherence);
  CHECK_FALSE(g.uncountable_linfty);
  CHECK(g.degree_bound == 1);

  AutomatonSpec abc = parse_dfa_file(R"(
alphabet: a b c
initial: q0
finals: q0 q1 q2
trans: q0 a q0
trans: q0 b q1
trans: q1 b q1
trans: q1 c q2
trans: q2 c q2
)");
  CHECK(classify(abc).degree_bound == 2);
}

TEST_CASE("two final-state cycles sharing a state force uncountable Linfty") {
  // Final q1 carries two distinct cycles (letters a and b both loop).
  AutomatonSpec spec = parse_dfa_file(R"(
alphabet: a b
initial: q0
finals: q1
trans: q0 a q1
trans: q1 a q1
trans: q1 b q1
)");
  GrowthClass g = classify(spec);
  CHECK(g.uncountable_linfty);
  CHECK(g.uncountable_adherence);
}

TEST_CASE("a double cycle without finals gives uncountable adherence only") {
  // Two cycles share q0, but the only final state lies outside every
  // cycle, so L-infinity stays countable while adh(L) does not.
  AutomatonSpec spec = parse_dfa_file(R"(
alphabet: a b c
initial: q0
finals: q1
trans: q0 a q0
trans: q0 b q0
trans: q0 c q1
)");
  GrowthClass g = classify(spec);
  CHECK(g.kind == GrowthClass::Exponential);
  CHECK(g.uncountable_adherence);
  CHECK_FALSE(g.uncountable_linfty);
}

TEST_CASE("classify rejects infinite automata") {
  CHECK_THROWS_AS(classify(dyck_prefix()), unsupported_error);
  CHECK_THROWS_AS(classify(balanced_diff()), unsupported_error);
}
