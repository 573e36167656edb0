#include "postlab/conditions.hpp"

#include <algorithm>
#include <string>

#include "postlab/errors.hpp"
#include "postlab/postnum.hpp"

namespace postlab {

namespace {

/* Exponent vectors of the degree-t monomials, lexicographic from the first
   variable down.  The column order of every matrix. */
template <int Vars>
std::vector<std::array<int, Vars>> monomials(int t) {
  std::vector<std::array<int, Vars>> out;
  std::array<int, Vars> e{};
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == Vars - 1) {
      e[var] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  rec(rec, 0, t);
  return out;
}

/* All exponent vectors of total degree <= cap, by degree then lex: the jet
   rows of a fat point. */
template <int Vars>
std::vector<std::array<int, Vars>> jets(int cap) {
  std::vector<std::array<int, Vars>> out;
  for (int d = 0; d <= cap; ++d) {
    auto layer = monomials<Vars>(d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

template <std::size_t N>
std::vector<std::vector<u64>> power_tables(const PrimeField& f,
                                           const std::array<u64, N>& c,
                                           int maxdeg) {
  std::vector<std::vector<u64>> pw(N, std::vector<u64>(maxdeg + 1, 1));
  for (std::size_t i = 0; i < N; ++i)
    for (int e = 1; e <= maxdeg; ++e) pw[i][e] = f.mul(pw[i][e - 1], c[i]);
  return pw;
}

template <int Vars>
std::vector<u64> eval_row(const PrimeField& f,
                          const std::vector<std::array<int, Vars>>& mons,
                          const std::vector<std::vector<u64>>& pw) {
  std::vector<u64> row(mons.size());
  for (std::size_t c = 0; c < mons.size(); ++c) {
    u64 v = 1;
    for (int i = 0; i < Vars; ++i) v = f.mul(v, pw[i][mons[c][i]]);
    row[c] = v;
  }
  return row;
}

/* Directional derivative of each monomial at the support. */
template <int Vars>
std::vector<u64> derivative_row(const PrimeField& f,
                                const std::vector<std::array<int, Vars>>& mons,
                                const std::vector<std::vector<u64>>& pw,
                                const std::array<u64, Vars>& dir) {
  std::vector<u64> row(mons.size());
  for (std::size_t c = 0; c < mons.size(); ++c) {
    u64 acc = 0;
    for (int i = 0; i < Vars; ++i) {
      if (mons[c][i] == 0 || dir[i] == 0) continue;
      u64 term = f.mul(f.reduce(mons[c][i]), dir[i]);
      for (int k = 0; k < Vars; ++k)
        term = f.mul(term, pw[k][mons[c][k] - (k == i ? 1 : 0)]);
      acc = f.add(acc, term);
    }
    row[c] = acc;
  }
  return row;
}

/* Jet rows of a point of multiplicity m: move the center to the first
   coordinate point by an invertible frame recorded from the center itself,
   then read off the coefficients of the low-order monomials in the new
   coordinates.  Vars = 4 for P^3, 3 for a plane. */
template <int Vars>
std::vector<std::vector<u64>> fat_rows(
    const PrimeField& f, const std::array<u64, Vars>& center, int m,
    const std::vector<std::array<int, Vars>>& mons) {
  // Frame: first column the center, then the standard basis vectors other
  // than the center's leading coordinate.
  int lead = 0;
  while (lead < Vars && center[lead] == 0) ++lead;
  std::array<std::array<u64, Vars>, Vars> frame{};
  for (int r = 0; r < Vars; ++r) frame[r][0] = center[r];
  int col = 1;
  for (int j = 0; j < Vars; ++j) {
    if (j == lead) continue;
    frame[j][col] = 1;
    ++col;
  }

  const auto B = jets<Vars - 1>(m - 1);
  // Dense index of a truncated exponent vector.
  std::vector<int> strides(Vars - 1, 1);
  for (int i = Vars - 3; i >= 0; --i) strides[i] = strides[i + 1] * m;
  auto bidx = [&](const std::array<int, Vars - 1>& b) {
    int s = 0;
    for (int i = 0; i < Vars - 1; ++i) s += b[i] * strides[i];
    return s;
  };
  std::vector<int> lookup(strides[0] * m, -1);
  std::vector<int> total(B.size(), 0);
  for (std::size_t r = 0; r < B.size(); ++r) {
    lookup[bidx(B[r])] = (int)r;
    for (int v = 0; v < Vars - 1; ++v) total[r] += B[r][v];
  }

  std::vector<std::vector<u64>> rows(B.size(),
                                     std::vector<u64>(mons.size(), 0));
  std::vector<u64> poly(B.size()), next(B.size());
  for (std::size_t c = 0; c < mons.size(); ++c) {
    std::fill(poly.begin(), poly.end(), 0);
    poly[0] = 1;
    // Multiply in the linear forms row-by-row of the frame, truncating to
    // total degree < m in the non-leading variables.
    for (int i = 0; i < Vars; ++i) {
      for (int rep = 0; rep < mons[c][i]; ++rep) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t r = 0; r < B.size(); ++r) {
          if (poly[r] == 0) continue;
          if (frame[i][0] != 0)
            next[r] = f.add(next[r], f.mul(frame[i][0], poly[r]));
          for (int v = 1; v < Vars; ++v) {
            if (frame[i][v] == 0) continue;
            if (total[r] + 1 > m - 1) continue;
            auto b = B[r];
            ++b[v - 1];
            int target = lookup[bidx(b)];
            next[target] = f.add(next[target], f.mul(frame[i][v], poly[r]));
          }
        }
        poly.swap(next);
      }
    }
    for (std::size_t r = 0; r < B.size(); ++r) rows[r][c] = poly[r];
  }
  return rows;
}

ConditionMatrix pack(std::vector<std::vector<u64>> rows,
                     std::vector<RowInfo> info, std::size_t cols) {
  ConditionMatrix cm;
  cm.matrix = FMatrix(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) cm.matrix.at(r, c) = rows[r][c];
  cm.rows = std::move(info);
  return cm;
}

void check_samples(const PrimeField& f, int needed, const char* what) {
  if ((u64)needed >= f.modulus())
    throw FieldTooSmall(std::string(what) + " needs " +
                        std::to_string(needed) +
                        " distinct parameters over F_" +
                        std::to_string(f.modulus()));
}

}  // namespace

ConditionMatrix build_p3(const PrimeField& f, const UnionScheme& x, int t) {
  if (t < 0) throw DegreeUndefined("negative twist");
  (void)degree(x, t);  // triggers the fat point guards
  check_samples(f, t + 1, "line sampling");

  const auto mons = monomials<4>(t);
  std::vector<std::vector<u64>> rows;
  std::vector<RowInfo> info;

  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto& comp = x.components[i];
    if (const auto* fp = std::get_if<FatPoint>(&comp)) {
      auto jr = fat_rows<4>(f, fp->center.c, fp->m, mons);
      for (std::size_t r = 0; r < jr.size(); ++r) {
        rows.push_back(std::move(jr[r]));
        info.push_back({i, RowKind::FatJet, (int)r});
      }
    } else if (const auto* lc = std::get_if<LineComp>(&comp)) {
      for (int lam = 0; lam <= t; ++lam) {
        auto pt = line_point(f, lc->line, 1, f.reduce(lam));
        rows.push_back(eval_row<4>(f, mons, power_tables(f, pt.c, t)));
        info.push_back({i, RowKind::LineSample, lam});
      }
    } else if (const auto* sp = std::get_if<SimplePoint>(&comp)) {
      rows.push_back(eval_row<4>(f, mons, power_tables(f, sp->pt.c, t)));
      info.push_back({i, RowKind::Evaluation, 0});
    } else {
      const auto& tv = std::get<TangentVector>(comp);
      auto pw = power_tables(f, tv.support.c, t);
      if (!x.decoration[i]) {
        rows.push_back(eval_row<4>(f, mons, pw));
        info.push_back({i, RowKind::Evaluation, 0});
      }
      rows.push_back(derivative_row<4>(f, mons, pw, tv.direction.c));
      info.push_back({i, RowKind::Derivative, 0});
    }
  }
  return pack(std::move(rows), std::move(info), mons.size());
}

ConditionMatrix build_plane(const PrimeField& f, const TraceScheme& tr,
                            int t) {
  const auto* h = std::get_if<PlaneP3>(&tr.surface);
  if (!h) throw InvalidUnion("trace does not live on a plane");
  if (t < 0) throw DegreeUndefined("negative twist");
  (void)trace_degree(tr, t);  // fat point guards
  check_samples(f, t + 1, "line sampling");

  const auto mons = monomials<3>(t);
  std::vector<std::vector<u64>> rows;
  std::vector<RowInfo> info;

  auto coords = [&](const ProjPoint& p) { return plane_coords(f, *h, p); };

  for (std::size_t i = 0; i < tr.items.size(); ++i) {
    const auto& item = tr.items[i];
    if (const auto* pf = std::get_if<PlaneFatPoint>(&item)) {
      auto u = coords(pf->center);
      int lead = 0;
      while (lead < 3 && u[lead] == 0) ++lead;
      u64 scale = f.inv(u[lead]);
      for (auto& v : u) v = f.mul(v, scale);
      auto jr = fat_rows<3>(f, u, pf->m, mons);
      for (std::size_t r = 0; r < jr.size(); ++r) {
        rows.push_back(std::move(jr[r]));
        info.push_back({i, RowKind::FatJet, (int)r});
      }
    } else if (const auto* sp = std::get_if<SurfacePoint>(&item)) {
      rows.push_back(eval_row<3>(f, mons, power_tables(f, coords(sp->pt), t)));
      info.push_back({i, RowKind::Evaluation, 0});
    } else if (const auto* stv = std::get_if<SurfaceTangentVector>(&item)) {
      auto pw = power_tables(f, coords(stv->support), t);
      if (!stv->decorated) {
        rows.push_back(eval_row<3>(f, mons, pw));
        info.push_back({i, RowKind::Evaluation, 0});
      }
      rows.push_back(derivative_row<3>(f, mons, pw, coords(stv->direction)));
      info.push_back({i, RowKind::Derivative, 0});
    } else if (const auto* tl = std::get_if<TraceLine>(&item)) {
      for (int lam = 0; lam <= t; ++lam) {
        auto pt = line_point(f, tl->line, 1, f.reduce(lam));
        rows.push_back(eval_row<3>(f, mons, power_tables(f, coords(pt), t)));
        info.push_back({i, RowKind::LineSample, lam});
      }
    } else {
      const auto& tc = std::get<TraceConic>(item);
      check_samples(f, 2 * t, "conic sampling");
      for (int k = 0; k <= 2 * t; ++k) {
        P1Point st = k < 2 * t ? make_p1(f, 1, f.reduce(k)) : make_p1(f, 0, 1);
        auto pt = conic_point(f, tc.conic, st);
        rows.push_back(eval_row<3>(f, mons, power_tables(f, coords(pt), t)));
        info.push_back({i, RowKind::CurveSample, k});
      }
    }
  }
  return pack(std::move(rows), std::move(info), mons.size());
}

namespace {

/* Parameter-space velocity of a tangent direction: (ds, du) with the image
   of (st + eps ds, uv + eps du) leaving the support toward dir.  Solves a
   4x5 system; the direction must lie in the tangent plane. */
struct Velocity {
  std::array<u64, 2> ds{}, du{};
};

Velocity tangent_velocity(const PrimeField& f, const QuadricP3& q,
                          const QuadricParams& at, const ProjPoint& dir) {
  FMatrix a(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < 4; ++c) a.at(c, 2 * i + j) = q.tensor[i][j][c];
  auto zd = solve(a, {dir.c[0], dir.c[1], dir.c[2], dir.c[3]}, f);
  if (!zd) throw InvalidUnion("degenerate quadric tensor");

  const std::array<u64, 2> zs{at.st.s, at.st.t};
  const std::array<u64, 2> zu{at.uv.s, at.uv.t};
  FMatrix sys(4, 5);
  std::vector<u64> rhs(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      int r = 2 * i + j;
      sys.at(r, i) = zu[j];
      sys.at(r, 2 + j) = zs[i];
      sys.at(r, 4) = f.neg(f.mul(zs[i], zu[j]));
      rhs[r] = (*zd)[r];
    }
  auto sol = solve(sys, rhs, f);
  if (!sol)
    throw InvalidUnion("tangent vector direction leaves the quadric");
  return Velocity{{(*sol)[0], (*sol)[1]}, {(*sol)[2], (*sol)[3]}};
}

}  // namespace

ConditionMatrix build_quadric(const PrimeField& f, const TraceScheme& tr,
                              int a, int b) {
  const auto* q = std::get_if<QuadricP3>(&tr.surface);
  if (!q) throw InvalidUnion("trace does not live on a quadric");
  if (a < 0 || b < 0) throw DegreeUndefined("negative bidegree");
  (void)trace_degree_bidegree(tr, a, b);
  check_samples(f, std::max(a, b) + 1, "ruling sampling");

  const std::size_t cols = (std::size_t)(a + 1) * (b + 1);
  std::vector<std::vector<u64>> rows;
  std::vector<RowInfo> info;

  // Monomial (i, j) = s^i t^(a-i) u^j v^(b-j), column i (b+1) + j.
  auto point_row = [&](const QuadricParams& at) {
    std::vector<u64> row(cols);
    std::vector<u64> ps(a + 1, 1), pt(a + 1, 1), pu(b + 1, 1), pv(b + 1, 1);
    for (int e = 1; e <= a; ++e) {
      ps[e] = f.mul(ps[e - 1], at.st.s);
      pt[e] = f.mul(pt[e - 1], at.st.t);
    }
    for (int e = 1; e <= b; ++e) {
      pu[e] = f.mul(pu[e - 1], at.uv.s);
      pv[e] = f.mul(pv[e - 1], at.uv.t);
    }
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j)
        row[i * (b + 1) + j] =
            f.mul(f.mul(ps[i], pt[a - i]), f.mul(pu[j], pv[b - j]));
    return row;
  };
  auto velocity_row = [&](const QuadricParams& at, const Velocity& vel) {
    std::vector<u64> row(cols);
    const std::array<u64, 4> c{at.st.s, at.st.t, at.uv.s, at.uv.t};
    const std::array<u64, 4> d{vel.ds[0], vel.ds[1], vel.du[0], vel.du[1]};
    const int maxe = std::max(a, b);
    auto pw = power_tables(f, c, maxe);
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j) {
        const std::array<int, 4> e{i, a - i, j, b - j};
        u64 acc = 0;
        for (int v = 0; v < 4; ++v) {
          if (e[v] == 0 || d[v] == 0) continue;
          u64 term = f.mul(f.reduce(e[v]), d[v]);
          for (int k = 0; k < 4; ++k)
            term = f.mul(term, pw[k][e[k] - (k == v ? 1 : 0)]);
          acc = f.add(acc, term);
        }
        row[i * (b + 1) + j] = acc;
      }
    return row;
  };

  for (std::size_t i = 0; i < tr.items.size(); ++i) {
    const auto& item = tr.items[i];
    if (const auto* sp = std::get_if<SurfacePoint>(&item)) {
      rows.push_back(point_row(quadric_params(f, *q, sp->pt)));
      info.push_back({i, RowKind::Evaluation, 0});
    } else if (const auto* stv = std::get_if<SurfaceTangentVector>(&item)) {
      auto at = quadric_params(f, *q, stv->support);
      if (!stv->decorated) {
        rows.push_back(point_row(at));
        info.push_back({i, RowKind::Evaluation, 0});
      }
      rows.push_back(velocity_row(at, tangent_velocity(f, *q, at, stv->direction)));
      info.push_back({i, RowKind::Derivative, 0});
    } else if (const auto* tl = std::get_if<TraceLine>(&item)) {
      const auto base = quadric_params(f, *q, tl->line.a);
      const int n = tl->ruling == RulingType::FirstFixed ? b : a;
      for (int k = 0; k <= n; ++k) {
        P1Point moving = make_p1(f, 1, f.reduce(k));
        QuadricParams at = tl->ruling == RulingType::FirstFixed
                               ? QuadricParams{base.st, moving}
                               : QuadricParams{moving, base.uv};
        rows.push_back(point_row(at));
        info.push_back({i, RowKind::LineSample, k});
      }
    } else {
      throw InvalidUnion("trace item not supported on a quadric");
    }
  }
  return pack(std::move(rows), std::move(info), cols);
}

Cohomology instance_cohomology(const PrimeField& f, const UnionScheme& x,
                               int t) {
  auto cm = build_p3(f, x, t);
  const i64 deg = degree(x, t);
  if ((i64)cm.matrix.rows != deg)
    throw PostlabError("row count disagrees with the union's degree");
  Cohomology out;
  out.n_forms = (i64)cm.matrix.cols;
  out.degree = deg;
  out.rank = (i64)rank(cm.matrix, f);
  out.h0 = out.n_forms - out.rank;
  out.h1 = deg - out.rank;
  return out;
}

Cohomology trace_cohomology(const PrimeField& f, const TraceScheme& tr,
                            int t) {
  const bool plane = std::holds_alternative<PlaneP3>(tr.surface);
  auto cm = plane ? build_plane(f, tr, t) : build_quadric(f, tr, t, t);
  const i64 deg = trace_degree(tr, t);
  if ((i64)cm.matrix.rows != deg)
    throw PostlabError("row count disagrees with the trace's degree");
  Cohomology out;
  out.n_forms = (i64)cm.matrix.cols;
  out.degree = deg;
  out.rank = (i64)rank(cm.matrix, f);
  out.h0 = out.n_forms - out.rank;
  out.h1 = deg - out.rank;
  return out;
}

}  // namespace postlab
