#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "postlab/errors.hpp"
#include "postlab/postnum.hpp"

using namespace postlab;

namespace {

/* Independent route to the cell values: scan instead of divide. */
CombinatoricsCell ab_oracle(int m, int k) {
  i64 target = binom(k + 3, 3) - binom(m + 2, 3);
  for (i64 a = 0; a <= target / (k + 1) + 1; ++a)
    for (i64 b = 0; b <= k; ++b)
      if ((k + 1) * a + b == target) return {m, k, a, b};
  REQUIRE(false);
  return {};
}

}  // namespace

TEST_CASE("binomials") {
  CHECK(binom(5, 3) == 10);
  CHECK(binom(13, 3) == 286);
  CHECK(binom(120, 3) == 280840);
  CHECK(binom(2, 3) == 0);
  CHECK(binom(0, 3) == 0);
  CHECK(binom(3, 3) == 1);
  CHECK(binom(7, 2) == 21);
  CHECK_THROWS_AS(binom(3000000, 3), std::overflow_error);
}

TEST_CASE("fat point degrees") {
  CHECK(fatpoint_degree(0) == 0);
  CHECK(fatpoint_degree(1) == 1);
  CHECK(fatpoint_degree(2) == 4);
  CHECK(fatpoint_degree(3) == 10);
  CHECK(fatpoint_degree(8) == 120);
}

TEST_CASE("cell values") {
  auto c = ab(1, 2);
  CHECK(c.a == 3);
  CHECK(c.b == 0);
  c = ab(2, 4);
  CHECK(c.a == 6);
  CHECK(c.b == 1);
  c = ab(3, 5);
  CHECK(c.a == 7);
  CHECK(c.b == 4);
  c = ab(0, 3);
  CHECK(c.a == 5);
  CHECK(c.b == 0);
  c = ab(4, 3);
  CHECK(c.a == 0);
  CHECK(c.b == 0);
  CHECK_THROWS_AS(ab(4, 2), DegreeUndefined);
}

TEST_CASE("cells agree with the scan oracle and satisfy the relation") {
  for (int m = 0; m <= 60; ++m) {
    i64 prev_a = -1;
    for (int k = m - 1; k <= m + 40; ++k) {
      if (k < 0) continue;
      auto cell = ab(m, k);
      auto want = ab_oracle(m, k);
      REQUIRE(cell.a == want.a);
      REQUIRE(cell.b == want.b);
      REQUIRE(binom(m + 2, 3) + (i64{k} + 1) * cell.a + cell.b ==
              binom(k + 3, 3));
      REQUIRE(cell.b >= 0);
      REQUIRE(cell.b <= k);
      REQUIRE(cell.a > prev_a);
      prev_a = cell.a;
    }
  }
}

TEST_CASE("closed forms match the ledger") {
  for (int m = 0; m <= 60; ++m) {
    auto c1 = ab(m, m + 1);
    CHECK(c1.a == m + 2);
    CHECK(c1.b == 0);
    auto c2 = ab(m, m + 2);
    if (m % 2 == 0) {
      CHECK(c2.a == 3 * m / 2 + 3);
      CHECK(c2.b == 1);
    } else {
      CHECK(c2.a == (3 * m + 5) / 2);
      CHECK(c2.b == (m + 5) / 2);
    }
    if (m >= 1) {
      auto c3 = ab(m, m + 3);
      CHECK(c3.a == 2 * m + 4);
      CHECK(c3.b == 4);
    }
  }
  /* Four-way split two columns further out. */
  for (int m = 2; m <= 60; ++m) {
    auto c = ab(m, m + 4);
    if (m % 2 == 0 && m >= 6) {
      CHECK(c.a == 5 * m / 2 + 5);
      CHECK(c.b == 10);
    } else if (m == 2 || m == 4) {
      CHECK(c.a == 5 * m / 2 + 6);
      CHECK(c.b == 5 - m);
    } else if (m >= 17) {
      CHECK(c.a == (5 * m + 9) / 2);
      CHECK(c.b == (m + 25) / 2);
    } else {
      CHECK(c.a == (5 * m + 11) / 2);
      CHECK(c.b == (15 - m) / 2);
    }
  }
  auto gap = ab(1, 5);
  CHECK(gap.a == 9);
  CHECK(gap.b == 1);
}

TEST_CASE("critical value") {
  CHECK(critical_value(1, 1) == 1);
  CHECK(critical_value(2, 2) == 2);
  CHECK(critical_value(2, 7) == 5);
  CHECK(critical_value(3, 2) == 3);
  CHECK(critical_value(3, 3) == 4);
  CHECK(critical_value(5, 22) == 10);
  for (int m = 1; m <= 12; ++m) {
    int prev = 0;
    for (i64 d = 1; d <= 100; ++d) {
      int k = critical_value(m, d);
      CHECK(k >= m);
      CHECK(k >= prev);
      prev = k;
      CHECK(d <= ab(m, k).a);
      if (k > m) CHECK(d > ab(m, k - 1).a);
    }
  }
}

TEST_CASE("expected cohomology") {
  auto e = expected_cohomology(1, 3, 2);
  CHECK(e.h0 == 0);
  CHECK(e.h1 == 0);
  e = expected_cohomology(2, 2, 2);
  CHECK(e.h0 == 0);
  CHECK(e.h1 == 0);
  e = expected_cohomology(2, 6, 4);
  CHECK(e.h0 == 1);
  CHECK(e.h1 == 0);
  e = expected_cohomology(3, 3, 3);
  CHECK(e.h0 == 0);
  CHECK(e.h1 == 2);
  CHECK_THROWS_AS(expected_cohomology(3, 1, 1), DegreeUndefined);
  for (int m = 0; m <= 8; ++m)
    for (int d = 0; d <= 30; ++d)
      for (int t = (m > 0 ? m - 1 : 0); t <= 12; ++t) {
        auto x = expected_cohomology(m, d, t);
        CHECK(x.h0 * x.h1 == 0);
        CHECK(x.h0 - x.h1 ==
              binom(t + 3, 3) - fatpoint_degree(m) - i64{d} * (t + 1));
      }
}

TEST_CASE("exceptional window") {
  CHECK(is_exceptional(2, 2, 2));
  CHECK(is_exceptional(3, 2, 3));
  CHECK(is_exceptional(5, 5, 5));
  CHECK_FALSE(is_exceptional(2, 1, 2));
  CHECK_FALSE(is_exceptional(2, 2, 3));
  CHECK_FALSE(is_exceptional(5, 6, 5));
  CHECK_FALSE(is_exceptional(2, 3, 2));
}

TEST_CASE("difference identities") {
  CHECK(identity_eq2(1, 3).holds);
  CHECK(identity_eq2(1, 3).lhs == 16);
  for (int m = 0; m <= 20; ++m)
    for (int k = m + 2; k <= m + 40; ++k) CHECK(identity_eq2(m, k).holds);
  for (int m = 1; m <= 60; ++m) {
    auto c3 = identity_eq3(m);
    CHECK(c3.holds);
    CHECK(c3.rhs == 3 * m + 6);
  }
  for (int m = 0; m <= 60; ++m) CHECK(identity_eq4(m).holds);
  CHECK(identity_eq4(2).rhs == 62);  /* twice (3*4 + 30 + 20)/2 */
  CHECK_THROWS_AS(identity_eq2(3, 4), DegreeUndefined);
}

TEST_CASE("gap lemma") {
  auto g = gap_lemma(1, 4);
  CHECK(g.holds);
  CHECK(g.step_m == 3);
  CHECK(g.step_0 == 4);
  for (int m = 0; m <= 20; ++m)
    for (int k = m + 3; k <= m + 40; ++k) CHECK(gap_lemma(m, k).holds);
}

TEST_CASE("psi floor") {
  CHECK(psi(6, 1).twice == 246);
  CHECK_THROWS_AS(psi(5, 1), DegreeUndefined);
  for (int m = 1; m <= 50; ++m) {
    i64 prev = -1;
    for (int k = m + 5; k <= m + 40; ++k) {
      auto p = psi(k, m);
      CHECK(p.twice >= 0);
      CHECK(p.twice >= prev);
      prev = p.twice;
    }
  }
}

TEST_CASE("reconciliation report") {
  auto rows = reconcile_rows(60);
  REQUIRE(rows.size() == 8);
  int corrected = 0, confirmed = 0;
  for (const auto& r : rows) {
    CHECK(r.note.find("[BROKEN]") == std::string::npos);
    if (r.consistent)
      ++confirmed;
    else
      ++corrected;
  }
  CHECK(corrected == 6);
  CHECK(confirmed == 2);
  auto md = render_reconcile_markdown(rows);
  CHECK(md.find("| item |") != std::string::npos);
  CHECK(md.find("corrected") != std::string::npos);
  CHECK(md.find("C(m+2,3)") != std::string::npos);
}
