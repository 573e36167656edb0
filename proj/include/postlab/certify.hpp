#ifndef POSTLAB_CERTIFY_HPP
#define POSTLAB_CERTIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "postlab/conditions.hpp"
#include "postlab/postnum.hpp"
#include "postlab/schemecalc.hpp"

namespace postlab {

/* A full-rank condition matrix over F_p certifies maximal rank for the
   general union of the same shape: rank can only drop under
   specialization, and the random instance is a specialization of the
   generic one.  A rank deficit, by contrast, proves nothing about the
   general union by itself; it only bounds the generic (h0, h1) from
   above.  The three statuses keep that asymmetry explicit. */
enum class CertStatus {
  MaximalRankCertified,
  DeficitObserved,  /* deficit at a cell where the deficit is the known generic behavior */
  Unconfirmed,      /* deficit everywhere we looked, but full rank is still expected generically */
};
std::string to_string(CertStatus s);

inline constexpr u64 kDefaultPrime = 2147483647ULL;
inline constexpr u64 kFallbackPrimes[2] = {2147483629ULL, 2147483587ULL};

struct CertifyOptions {
  u64 seed = 0;
  u64 prime = kDefaultPrime;
  int retries = 3;  /* attempts on `prime` before trying the fallback primes */
  std::string strategy = "random";  /* random | witness-B | witness-R | witness-H */
};

struct Certificate {
  int m = 0;
  i64 d = 0;
  int t = 0;
  u64 prime = 0;
  u64 seed = 0;  /* master seed; per-attempt seeds are mixed from it */
  std::string strategy = "random";
  i64 n_forms = 0;
  i64 degree = 0;
  i64 rank = 0;
  i64 h0 = 0;
  i64 h1 = 0;
  CertStatus status = CertStatus::Unconfirmed;
  bool exceptional = false;
  int attempts = 0;
  i64 elapsed_ms = 0;
};

/* One random instance of the cell: a multiplicity-m point (omitted when
   m = 0) and d pairwise skew lines avoiding it. */
UnionScheme random_cell_instance(const PrimeField& f, Rng& rng, int m, i64 d);

/* Samples random instances (one multiplicity-m point and d pairwise skew
   lines avoiding it) until one has a full-rank condition matrix in degree
   t, or the attempt budget runs out: `retries` seeds on opt.prime, then
   one attempt per fallback prime.  When no attempt reaches full rank the
   certificate carries the worst observed (rank, h0, h1).

   The witness strategies delegate to the matching builder (B and R demand
   t = m+2, H reads t as its twist) and ignore d: the line count is fixed
   by the ledger.  The resulting certificate reports the realized counts. */
Certificate certify_maximal_rank(int m, i64 d, int t,
                                 const CertifyOptions& opt = {});

/* A full-rank certificate with h1 = 0 transfers to any sub-union of the
   same instance: dropping lines drops rows, and a subset of independent
   rows stays independent.  Derives the (m, d_sub, t) certificate without
   touching the matrix again.  Requires a certified random-strategy base
   with h1 = 0 and 0 <= d_sub <= base.d. */
Certificate derive_subunion(const Certificate& base, i64 d_sub);

/* The two vanishing statements for the cell (m, d) at its critical value
   k = critical_value(m, d): h0 = 0 one twist below k and h1 = 0 at k.
   Cells in the failure window (2 <= d <= m) only get the upper statement,
   at twist m+1; in degree m they are genuinely deficient and below that
   nothing is claimed. */
struct CellReport {
  int m = 0;
  i64 d = 0;
  int k = 0;
  bool exceptional = false;
  std::optional<Certificate> low;  /* h0 = 0 at k-1; absent on exceptional cells */
  Certificate high;                /* h1 = 0 at k (at m+1 when exceptional) */
  bool pass = false;
};
CellReport verify_theorem_cell(int m, i64 d, const CertifyOptions& opt = {});

/* Evidence gathering for a deficient cell: samples several random
   instances in degree t = m and reports the componentwise maximum of the
   observed (h0, h1).  Observed values bound the generic ones from above;
   a deficit recurring across independent samples is evidence of a generic
   deficit, not a proof of one.  The caveat string spells that out. */
struct ProbeResult {
  int m = 0;
  i64 d = 0;
  int t = 0;
  i64 h0 = 0;
  i64 h1 = 0;
  int samples = 0;
  std::string caveat;
};
ProbeResult exceptional_probe(int m, i64 d, int samples = 5,
                              const CertifyOptions& opt = {});

/* Structured witnesses.  Each builder realizes one of the three recipes
   over F_p, checks the degree bookkeeping identities before touching any
   linear algebra, and then requires the expected cohomology on the nose:

     B(m): one m-fold point and a(m, m+2) lines in degree m+2, total degree
           C(m+5,3) - 1, so h0 = 1 and h1 = 0.  For odd m the recipe also
           carries tangent vectors at marked collinear points and one extra
           simple point.
     R(m): odd m >= 3; one m-fold point, a(m, m+2) lines, and b(m, m+2)
           tangent vectors at points of a conic, degree exactly C(m+5,3),
           so h0 = h1 = 0.
     H(m, k): k >= m+3; one m-fold point, a(m, k) lines transverse to a
           smooth quadric, and b(m, k) tangent vectors at marked points
           spread over ceil(b/2) lines of one ruling, degree exactly
           C(k+3,3), so h0 = h1 = 0 in degree k.
*/
struct WitnessChecks {
  i64 n_forms = 0;
  i64 degree = 0;
  i64 rank = 0;
  i64 h0 = 0;
  i64 h1 = 0;
  bool degree_identity = false;  /* combinatorial degree matches the recipe's target */
  bool rank_expected = false;    /* cohomology matches the recipe's claim */
};

struct WitnessConfig {
  std::string kind;  /* "B-even", "B-odd", "R", or "H" */
  int m = 0;
  int k = 0;  /* the twist the vanishing statement lives in */
  u64 prime = 0;
  u64 seed = 0;
  i64 lines = 0;
  i64 marked_left = 0;   /* B: lines meeting the plane on L / on R */
  i64 marked_right = 0;
  i64 tangent_vectors = 0;
  i64 ruling_lines = 0;  /* H: lines of the ruling carrying the marks */
  int mark_surplus = 0;  /* B odd: printed mark tally minus marks actually placed */
  int attempts = 0;
  std::vector<LineP3> scaffold_lines;     /* B: L and R; H: the marked ruling lines */
  std::vector<ProjPoint> marks;           /* where the marked lines touch the scaffold */
  std::optional<ProjPoint> corner;        /* B: the intersection of L and R */
  UnionScheme scheme;
  std::optional<Surface> splitting;  /* the scaffolding surface, for replaying the split */
  WitnessChecks checks;
};

WitnessConfig build_witness_B(int m, const CertifyOptions& opt = {});
WitnessConfig build_witness_R(int m, const CertifyOptions& opt = {});
WitnessConfig build_witness_H(int m, int k, const CertifyOptions& opt = {});

/* One inductive step: split X along F and check the exact sequence
   bookkeeping.  `sufficient` records whether the step alone already forces
   h1(X) = 0, i.e. both h1(residual) and h1(trace) vanish. */
struct ReplayReport {
  CastelnuovoReport base;
  bool sufficient = false;
};
ReplayReport replay_castelnuovo_step(const PrimeField& f, const UnionScheme& x,
                                     const Surface& surf, int twist);

}  // namespace postlab

#endif
