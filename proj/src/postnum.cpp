#include "postlab/postnum.hpp"

#include <limits>
#include <string>

#include "postlab/errors.hpp"

namespace postlab {

i64 binom(i64 n, int k) {
  if (k < 0) throw std::invalid_argument("binom: negative k");
  if (n < k) return 0;
  /* The sessions never need more than C(~120, 3); stay far from overflow
     while allowing headroom. */
  if (n > 2000000)
    throw std::overflow_error("binom: n out of supported range");
  i64 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i);
    r /= i;
  }
  return r;
}

i64 fatpoint_degree(int m) {
  if (m < 0) throw DegreeUndefined("fatpoint_degree: m < 0");
  return binom(m + 2, 3);
}

CombinatoricsCell ab(int m, int k) {
  if (m < 0) throw DegreeUndefined("ab: m < 0");
  i64 room = binom(k + 3, 3) - fatpoint_degree(m);
  if (k < 0 || room < 0)
    throw DegreeUndefined("ab: cell (" + std::to_string(m) + ", " +
                          std::to_string(k) + ") undefined");
  CombinatoricsCell cell;
  cell.m = m;
  cell.k = k;
  cell.a = room / (k + 1);
  cell.b = room % (k + 1);
  return cell;
}

int critical_value(int m, i64 d) {
  if (m < 1 || d < 1)
    throw DegreeUndefined("critical_value: need m >= 1, d >= 1");
  for (int k = m;; ++k) {
    if (fatpoint_degree(m) + (k + 1) * d <= binom(k + 3, 3)) return k;
  }
}

Expected expected_cohomology(int m, i64 d, int t) {
  if (t < m - 1)
    throw DegreeUndefined("expected_cohomology: t < m-1");
  i64 delta = binom(t + 3, 3) - fatpoint_degree(m) - d * (t + 1);
  Expected e;
  e.h0 = delta > 0 ? delta : 0;
  e.h1 = delta < 0 ? -delta : 0;
  return e;
}

bool is_exceptional(int m, i64 d, int t) {
  return 2 <= d && d <= m && t == m;
}

IdentityCheck identity_eq2(int m, int k) {
  if (k < m + 2) throw DegreeUndefined("identity_eq2: k < m+2");
  auto hi = ab(m, k);
  auto lo = ab(m, k - 2);
  IdentityCheck c;
  c.lhs = 2 * lo.a + (i64{k} + 1) * (hi.a - lo.a) + hi.b - lo.b;
  c.rhs = (i64{k} + 1) * (i64{k} + 1);
  c.holds = c.lhs == c.rhs;
  return c;
}

IdentityCheck identity_eq3(int m) {
  if (m < 1) throw DegreeUndefined("identity_eq3: m < 1");
  auto hi = ab(m, m + 2);
  auto lo = ab(m - 1, m + 1);
  IdentityCheck c;
  c.lhs = lo.a + (i64{m} + 3) * (hi.a - lo.a) + hi.b - lo.b;
  c.rhs = 3 * i64{m} + 6;
  c.holds = c.lhs == c.rhs;
  return c;
}

IdentityCheck identity_eq4(int m) {
  if (m < 0) throw DegreeUndefined("identity_eq4: m < 0");
  auto cell = ab(m, m + 2);
  IdentityCheck c;
  c.lhs = 2 * (i64{m} + 3) * cell.a + 2 * cell.b;
  c.rhs = 3 * i64{m} * m + 15 * i64{m} + 20;
  c.holds = c.lhs == c.rhs;
  return c;
}

GapCheck gap_lemma(int m, int k) {
  if (k < m + 3) throw DegreeUndefined("gap_lemma: k < m+3");
  GapCheck g;
  g.step_m = ab(m, k).a - ab(m, k - 2).a;
  g.step_0 = ab(0, k).a - ab(0, k - 2).a;
  i64 half_up = (i64{k} + 1) / 2;
  g.holds = g.step_m >= g.step_0 - 1 && g.step_0 - 1 >= half_up;
  return g;
}

HalfInt psi(int k, int m) {
  if (k < m + 5) throw DegreeUndefined("psi: k < m+5");
  /* (k-1)(k-2+k/2) = (k-1)(3k-4)/2, so twice psi is integral. */
  HalfInt h;
  h.twice = 4 * binom(k + 3, 3) - 4 * fatpoint_degree(m) -
            (i64{k} - 1) * (3 * i64{k} - 4) - 4 * i64{k} + 8;
  return h;
}

}  // namespace postlab
