#ifndef POSTLAB_POSTNUM_HPP
#define POSTLAB_POSTNUM_HPP

#include <string>
#include <vector>

#include "postlab/rng.hpp"

namespace postlab {

/* Overflow-checked C(n, k); zero when n < k. */
i64 binom(i64 n, int k);

/* Number of conditions a multiplicity-m point imposes in degree >= m-1,
   i.e. C(m+2, 3). */
i64 fatpoint_degree(int m);

/* The cell (m, k) of the ledger: the unique (a, b) with
   C(m+2,3) + (k+1) a + b = C(k+3,3) and 0 <= b <= k.
   Defined for k >= m-1; throws DegreeUndefined otherwise. */
struct CombinatoricsCell {
  int m = 0;
  int k = 0;
  i64 a = 0;
  i64 b = 0;
};
CombinatoricsCell ab(int m, int k);

/* Minimal k >= m with C(m+2,3) + (k+1) d <= C(k+3,3); equivalently the k
   with a(m, k-1) < d <= a(m, k). */
int critical_value(int m, i64 d);

/* (h0, h1) a general union of one multiplicity-m point and d lines is
   expected to have in degree t: the positive and negative parts of
   C(t+3,3) - C(m+2,3) - d (t+1). */
struct Expected {
  i64 h0 = 0;
  i64 h1 = 0;
};
Expected expected_cohomology(int m, i64 d, int t);

/* The known failure window: 2 <= d <= m and t == m. */
bool is_exceptional(int m, i64 d, int t);

/* Difference identities between neighboring ledger cells.  Each returns the
   two sides so a caller can display them; `holds` is the assertion. */
struct IdentityCheck {
  i64 lhs = 0;
  i64 rhs = 0;
  bool holds = false;
};
/* 2 a(m,k-2) + (k+1)(a(m,k) - a(m,k-2)) + b(m,k) - b(m,k-2) = (k+1)^2,
   for k >= m+2. */
IdentityCheck identity_eq2(int m, int k);
/* a(m-1,m+1) + (m+3)(a(m,m+2) - a(m-1,m+1)) + b(m,m+2) - b(m-1,m+1) = 3m+6,
   for m >= 1. */
IdentityCheck identity_eq3(int m);
/* (m+3) a(m,m+2) + b(m,m+2) = (3m^2 + 15m + 20) / 2 ... doubled to stay in
   integers: 2(m+3) a + 2 b = 3m^2 + 15m + 20. */
IdentityCheck identity_eq4(int m);

/* a(m,k) - a(m,k-2) >= a(0,k) - a(0,k-2) - 1 >= ceil(k/2) for k >= m+3. */
struct GapCheck {
  i64 step_m = 0;
  i64 step_0 = 0;
  bool holds = false;
};
GapCheck gap_lemma(int m, int k);

/* psi(k, m) = 2 C(k+3,3) - 2 C(m+2,3) - (k-1)(k-2+k/2) - 2k + 4, a
   half-integer; stored as twice its value.  Defined for k >= m+5. */
struct HalfInt {
  i64 twice = 0;
};
HalfInt psi(int k, int m);

/* One row of the printed-value reconciliation: a displayed formula or value,
   what the ledger derives, and whether they agree. */
struct ReconRow {
  std::string item;
  std::string printed;
  std::string derived;
  bool consistent = false;
  std::string note;
};
std::vector<ReconRow> reconcile_rows(int m_max = 60);
std::string render_reconcile_markdown(const std::vector<ReconRow>& rows);

}  // namespace postlab

#endif
