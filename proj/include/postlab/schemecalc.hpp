#ifndef POSTLAB_SCHEMECALC_HPP
#define POSTLAB_SCHEMECALC_HPP

#include <optional>
#include <variant>
#include <vector>

#include "postlab/space.hpp"

namespace postlab {

/* Components of a union scheme in P^3. */
struct FatPoint {
  ProjPoint center;
  int m = 1;
};
struct LineComp {
  LineP3 line;
};
struct SimplePoint {
  ProjPoint pt;
};
/* Degree 2 connected zero-dimensional scheme: the support plus a first-order
   direction toward another point. */
struct TangentVector {
  ProjPoint support;
  ProjPoint direction;
};
using SchemeComponent =
    std::variant<FatPoint, LineComp, SimplePoint, TangentVector>;

/* Validated union.  decoration[i] is set exactly when component i is a
   tangent vector whose support lies on line component decoration[i]; such a
   vector imposes only its derivative condition, the line supplying the
   evaluation. */
struct UnionScheme {
  std::vector<SchemeComponent> components;
  std::vector<std::optional<std::size_t>> decoration;

  /* Validates: lines pairwise skew; fat centers off all lines and distinct
     from every other support; tangent vector supports pairwise distinct and
     directions off the decorating line; simple points on no other
     component.  Throws InvalidUnion. */
  static UnionScheme build(const PrimeField& f,
                           std::vector<SchemeComponent> comps);
};

using Surface = std::variant<PlaneP3, QuadricP3>;

/* Items of a trace scheme on a plane or a smooth quadric. */
struct PlaneFatPoint {
  ProjPoint center;
  int m = 1;
};
struct SurfacePoint {
  ProjPoint pt;
};
/* decorated: the support lies on a curve of the same trace, so only the
   derivative condition is imposed. */
struct SurfaceTangentVector {
  ProjPoint support;
  ProjPoint direction;
  bool decorated = false;
};
/* Line inside the surface; ruling is meaningful when the surface is a
   quadric. */
struct TraceLine {
  LineP3 line;
  RulingType ruling = RulingType::FirstFixed;
};
struct TraceConic {
  ConicInPlane conic;
};
using TraceItem = std::variant<PlaneFatPoint, SurfacePoint,
                               SurfaceTangentVector, TraceLine, TraceConic>;

struct TraceScheme {
  Surface surface;
  std::vector<TraceItem> items;
};

/* Number of conditions the scheme imposes on degree-t forms; equals
   h^0(O_X(t)) for a valid union.  Throws DegreeUndefined when t < m-1 for
   some fat point. */
i64 degree(const UnionScheme& x, int t);

/* Condition count of a trace at twist t: on a plane, degree-t forms; on a
   quadric, bidegree (t,t). */
i64 trace_degree(const TraceScheme& tr, int t);
/* Bidegree (a,b) count; the trace must live on a quadric. */
i64 trace_degree_bidegree(const TraceScheme& tr, int a, int b);

struct ResidualResult {
  UnionScheme residual;
  TraceScheme trace;
};

/* The residual/trace pair with respect to F.  Throws NonTransverse for a
   line tangent to the quadric, a line meeting it in a conjugate pair, or a
   fat point centered on the quadric. */
ResidualResult residual(const PrimeField& f, const UnionScheme& x,
                        const Surface& surf);

struct CastelnuovoReport {
  i64 h0_x = 0, h1_x = 0;
  i64 h0_res = 0, h1_res = 0;
  i64 h0_trace = 0, h1_trace = 0;
  i64 deg_x = 0, deg_res = 0, deg_trace = 0;
  bool conserved = false;
  bool h0_bound = false;
  bool h1_bound = false;
};

/* Instance cohomology of X at x, of the residual at x - deg F and of the
   trace at x, plus the two inequalities they must satisfy. */
CastelnuovoReport castelnuovo_check(const PrimeField& f, const UnionScheme& x,
                                    const Surface& surf, int twist);

}  // namespace postlab

#endif
