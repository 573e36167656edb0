#include "postlab/schemecalc.hpp"

#include <algorithm>
#include <cstddef>

#include "postlab/errors.hpp"
#include "postlab/postnum.hpp"

namespace postlab {

namespace {

bool same_point(const ProjPoint& a, const ProjPoint& b) { return a == b; }

const FatPoint* as_fat(const SchemeComponent& c) {
  return std::get_if<FatPoint>(&c);
}
const LineComp* as_line(const SchemeComponent& c) {
  return std::get_if<LineComp>(&c);
}
const SimplePoint* as_point(const SchemeComponent& c) {
  return std::get_if<SimplePoint>(&c);
}
const TangentVector* as_tv(const SchemeComponent& c) {
  return std::get_if<TangentVector>(&c);
}

u64 plane_eval(const PrimeField& f, const PlaneP3& h, const ProjPoint& x) {
  u64 acc = 0;
  for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(h.coeffs[i], x.c[i]));
  return acc;
}

bool proportional_p1(const P1Point& a, const P1Point& b, const PrimeField& f) {
  return f.sub(f.mul(a.s, b.t), f.mul(a.t, b.s)) == 0;
}

}  // namespace

UnionScheme UnionScheme::build(const PrimeField& f,
                               std::vector<SchemeComponent> comps) {
  UnionScheme x;
  x.components = std::move(comps);
  x.decoration.assign(x.components.size(), std::nullopt);

  std::vector<std::size_t> lines;
  for (std::size_t i = 0; i < x.components.size(); ++i)
    if (as_line(x.components[i])) lines.push_back(i);

  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto rel = line_line(f, as_line(x.components[lines[i]])->line,
                           as_line(x.components[lines[j]])->line);
      if (rel.kind != LineLineKind::Skew)
        throw InvalidUnion("lines of a union must be pairwise skew");
    }

  auto on_some_line = [&](const ProjPoint& p) -> std::optional<std::size_t> {
    for (std::size_t li : lines)
      if (on_line(f, as_line(x.components[li])->line, p)) return li;
    return std::nullopt;
  };

  // All zero-dimensional supports, for pairwise-distinctness checks.
  std::vector<ProjPoint> supports;
  auto claim_support = [&](const ProjPoint& p, const char* what) {
    for (const auto& q : supports)
      if (same_point(p, q))
        throw InvalidUnion(std::string(what) +
                           " coincides with another support");
    supports.push_back(p);
  };

  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto& c = x.components[i];
    if (const auto* fp = as_fat(c)) {
      if (fp->m < 1) throw InvalidUnion("fat point multiplicity must be >= 1");
      if (on_some_line(fp->center))
        throw InvalidUnion("fat point center lies on a line of the union");
      claim_support(fp->center, "fat point center");
    } else if (const auto* sp = as_point(c)) {
      if (on_some_line(sp->pt))
        throw InvalidUnion("simple point lies on a line of the union");
      claim_support(sp->pt, "simple point");
    } else if (const auto* tv = as_tv(c)) {
      if (same_point(tv->support, tv->direction))
        throw InvalidUnion("tangent vector direction equals its support");
      claim_support(tv->support, "tangent vector support");
      if (auto li = on_some_line(tv->support)) {
        if (on_line(f, as_line(x.components[*li])->line, tv->direction))
          throw InvalidUnion(
              "decorated tangent vector points along its own line");
        x.decoration[i] = *li;
      }
    }
  }
  return x;
}

i64 degree(const UnionScheme& x, int t) {
  i64 total = 0;
  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto& c = x.components[i];
    if (const auto* fp = as_fat(c)) {
      if (t < fp->m - 1)
        throw DegreeUndefined("fat point of multiplicity " +
                              std::to_string(fp->m) + " has no degree at t=" +
                              std::to_string(t));
      total += fatpoint_degree(fp->m);
    } else if (const auto* lc = as_line(c)) {
      (void)lc;
      total += t + 1;
    } else if (as_point(c)) {
      total += 1;
    } else {
      total += x.decoration[i] ? 1 : 2;
    }
  }
  return total;
}

namespace {

i64 trace_degree_plane(const TraceScheme& tr, int t) {
  i64 total = 0;
  for (const auto& item : tr.items) {
    if (const auto* pf = std::get_if<PlaneFatPoint>(&item)) {
      if (t < pf->m - 1)
        throw DegreeUndefined("plane fat point of multiplicity " +
                              std::to_string(pf->m) +
                              " has no degree at t=" + std::to_string(t));
      total += binom(pf->m + 1, 2);
    } else if (std::holds_alternative<SurfacePoint>(item)) {
      total += 1;
    } else if (const auto* stv = std::get_if<SurfaceTangentVector>(&item)) {
      total += stv->decorated ? 1 : 2;
    } else if (std::holds_alternative<TraceLine>(item)) {
      total += t + 1;
    } else {
      total += 2 * t + 1;
    }
  }
  return total;
}

}  // namespace

i64 trace_degree_bidegree(const TraceScheme& tr, int a, int b) {
  if (!std::holds_alternative<QuadricP3>(tr.surface))
    throw InvalidUnion("bidegree counts require a quadric trace");
  i64 total = 0;
  for (const auto& item : tr.items) {
    if (std::holds_alternative<SurfacePoint>(item)) {
      total += 1;
    } else if (const auto* stv = std::get_if<SurfaceTangentVector>(&item)) {
      total += stv->decorated ? 1 : 2;
    } else if (const auto* tl = std::get_if<TraceLine>(&item)) {
      total += tl->ruling == RulingType::FirstFixed ? b + 1 : a + 1;
    } else {
      throw InvalidUnion("trace item not supported on a quadric");
    }
  }
  return total;
}

i64 trace_degree(const TraceScheme& tr, int t) {
  if (std::holds_alternative<PlaneP3>(tr.surface))
    return trace_degree_plane(tr, t);
  return trace_degree_bidegree(tr, t, t);
}

namespace {

struct LineClass {
  bool contained = false;
  RulingType ruling = RulingType::FirstFixed;
  std::vector<ProjPoint> meets;  // transverse intersection, 1 or 2 points
};

LineClass classify_line(const PrimeField& f, const LineP3& l,
                        const PlaneP3& h) {
  LineClass out;
  auto rel = line_plane(f, l, h);
  if (rel.contained)
    out.contained = true;
  else
    out.meets.push_back(*rel.point);
  return out;
}

LineClass classify_line(const PrimeField& f, const LineP3& l,
                        const QuadricP3& q) {
  LineClass out;
  auto rel = line_quadric(f, l, q);
  switch (rel.kind) {
    case LineQuadricKind::Contained: {
      out.contained = true;
      auto pa = quadric_params(f, q, l.a);
      auto pb = quadric_params(f, q, l.b);
      out.ruling = proportional_p1(pa.st, pb.st, f) ? RulingType::FirstFixed
                                                    : RulingType::SecondFixed;
      break;
    }
    case LineQuadricKind::Tangent:
      throw NonTransverse("line tangent to the quadric");
    case LineQuadricKind::NoRationalPoint:
      throw NonTransverse("line meets the quadric in a conjugate point pair");
    case LineQuadricKind::TwoPoints:
      out.meets.push_back(*rel.p1);
      out.meets.push_back(*rel.p2);
      break;
  }
  return out;
}

/* Second point of the line span{L, direction} cap T_o(F), for upgrading the
   meet point of a transverse line into a tangent vector of the surface. */
ProjPoint span_tangent_direction(const PrimeField& f, const Surface& surf,
                                 const ProjPoint& o, const ProjPoint& lpt,
                                 const ProjPoint& dpt) {
  u64 wl, wd;
  if (const auto* h = std::get_if<PlaneP3>(&surf)) {
    wl = plane_eval(f, *h, lpt);
    wd = plane_eval(f, *h, dpt);
  } else {
    const auto& q = std::get<QuadricP3>(surf);
    wl = quadric_bilinear(f, q, o, lpt);
    wd = quadric_bilinear(f, q, o, dpt);
  }
  // wl != 0: the line is transverse at o.
  ProjPoint y{};
  for (int i = 0; i < 4; ++i)
    y.c[i] = f.sub(f.mul(wd, lpt.c[i]), f.mul(wl, dpt.c[i]));
  return make_point(f, y.c);
}

}  // namespace

ResidualResult residual(const PrimeField& f, const UnionScheme& x,
                        const Surface& surf) {
  const auto* h = std::get_if<PlaneP3>(&surf);
  const auto* q = std::get_if<QuadricP3>(&surf);

  auto on_surface = [&](const ProjPoint& p) {
    return h ? on_plane(f, *h, p) : on_quadric(f, *q, p);
  };
  auto tangent_to_surface = [&](const ProjPoint& o, const ProjPoint& d) {
    // o on the surface; does the vector toward d stay inside it?
    return h ? on_plane(f, *h, d) : quadric_bilinear(f, *q, o, d) == 0;
  };

  std::vector<std::optional<LineClass>> cls(x.components.size());
  for (std::size_t i = 0; i < x.components.size(); ++i)
    if (const auto* lc = as_line(x.components[i]))
      cls[i] = h ? classify_line(f, lc->line, *h)
                 : classify_line(f, lc->line, *q);

  // Meet points consumed by decorated tangent vectors get upgraded, not
  // re-listed.
  std::vector<std::vector<bool>> consumed(x.components.size());
  for (std::size_t i = 0; i < x.components.size(); ++i)
    if (cls[i]) consumed[i].assign(cls[i]->meets.size(), false);

  std::vector<SchemeComponent> res;
  std::vector<TraceItem> items;

  // First the tangent vectors: they decide which meet points survive.
  struct TvPlan {
    bool keep = false;             // stays in the residual untouched
    bool res_point = false;        // leaves a simple point behind
    std::optional<TraceItem> tr;   // contribution to the trace
  };
  std::vector<TvPlan> plan(x.components.size());

  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto* tv = as_tv(x.components[i]);
    if (!tv) continue;
    TvPlan& p = plan[i];
    if (!on_surface(tv->support)) {
      p.keep = true;
      continue;
    }
    const bool inside = tangent_to_surface(tv->support, tv->direction);
    if (x.decoration[i]) {
      const std::size_t li = *x.decoration[i];
      const LineClass& lc = *cls[li];
      if (lc.contained) {
        if (inside) {
          p.tr = SurfaceTangentVector{tv->support, tv->direction, true};
        } else {
          p.res_point = true;  // the trace curve absorbs the point
        }
      } else {
        bool found = false;
        for (std::size_t mi = 0; mi < lc.meets.size(); ++mi)
          if (same_point(lc.meets[mi], tv->support)) {
            consumed[li][mi] = true;
            found = true;
          }
        if (!found)
          throw NonTransverse(
              "tangent vector support misses its line's intersection");
        const LineP3& l = as_line(x.components[li])->line;
        ProjPoint other = same_point(l.a, tv->support) ? l.b : l.a;
        ProjPoint dir =
            inside ? tv->direction
                   : span_tangent_direction(f, surf, tv->support, other,
                                            tv->direction);
        p.tr = SurfaceTangentVector{tv->support, dir, false};
      }
    } else {
      if (inside)
        p.tr = SurfaceTangentVector{tv->support, tv->direction, false};
      else {
        p.res_point = true;
        p.tr = SurfacePoint{tv->support};
      }
    }
  }

  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto& c = x.components[i];
    if (const auto* fp = as_fat(c)) {
      if (!on_surface(fp->center)) {
        res.push_back(c);
      } else if (q) {
        throw NonTransverse("fat point centered on the quadric");
      } else {
        if (fp->m > 1) res.push_back(FatPoint{fp->center, fp->m - 1});
        items.push_back(PlaneFatPoint{fp->center, fp->m});
      }
    } else if (as_line(c)) {
      const LineClass& lc = *cls[i];
      if (lc.contained) {
        items.push_back(TraceLine{as_line(c)->line, lc.ruling});
      } else {
        res.push_back(c);
        for (std::size_t mi = 0; mi < lc.meets.size(); ++mi)
          if (!consumed[i][mi]) items.push_back(SurfacePoint{lc.meets[mi]});
      }
    } else if (const auto* sp = as_point(c)) {
      if (on_surface(sp->pt))
        items.push_back(SurfacePoint{sp->pt});
      else
        res.push_back(c);
    } else {
      const TvPlan& p = plan[i];
      if (p.keep) res.push_back(c);
      if (p.res_point) res.push_back(SimplePoint{as_tv(c)->support});
      if (p.tr) items.push_back(*p.tr);
    }
  }

  ResidualResult out{UnionScheme::build(f, std::move(res)),
                     TraceScheme{surf, std::move(items)}};
  return out;
}

}  // namespace postlab
