#include "postlab/conditions.hpp"
#include "postlab/schemecalc.hpp"

namespace postlab {

CastelnuovoReport castelnuovo_check(const PrimeField& f, const UnionScheme& x,
                                    const Surface& surf, int twist) {
  const int e = std::holds_alternative<PlaneP3>(surf) ? 1 : 2;
  auto split = residual(f, x, surf);

  CastelnuovoReport rep;
  auto cx = instance_cohomology(f, x, twist);
  auto cr = instance_cohomology(f, split.residual, twist - e);
  auto ct = trace_cohomology(f, split.trace, twist);

  rep.h0_x = cx.h0;
  rep.h1_x = cx.h1;
  rep.h0_res = cr.h0;
  rep.h1_res = cr.h1;
  rep.h0_trace = ct.h0;
  rep.h1_trace = ct.h1;
  rep.deg_x = cx.degree;
  rep.deg_res = cr.degree;
  rep.deg_trace = ct.degree;
  rep.conserved = rep.deg_x == rep.deg_res + rep.deg_trace;
  rep.h0_bound = rep.h0_x <= rep.h0_res + rep.h0_trace;
  rep.h1_bound = rep.h1_x <= rep.h1_res + rep.h1_trace;
  return rep;
}

}  // namespace postlab
