#include "postlab/space.hpp"

#include <stdexcept>

#include "postlab/errors.hpp"

namespace postlab {
namespace {

/* z coordinate order for P^1 x P^1: z_{ij} at 2i + j. */
constexpr std::size_t zidx(int i, int j) { return std::size_t(2 * i + j); }

FMatrix tensor_matrix(const QuadricP3& q) {
  FMatrix m(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < 4; ++c) m.at(std::size_t(c), zidx(i, j)) = q.tensor[i][j][c];
  return m;
}

FMatrix matmul(const FMatrix& x, const FMatrix& y, const PrimeField& f) {
  FMatrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      u64 v = x.at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        r.at(i, j) = f.add(r.at(i, j), f.mul(v, y.at(k, j)));
    }
  return r;
}

P1Point sample_p1(Rng& rng, const PrimeField& f) {
  for (int it = 0; it < kResampleBudget; ++it) {
    u64 s = f.sample(rng);
    u64 t = f.sample(rng);
    if (s == 0 && t == 0) continue;
    return make_p1(f, s, t);
  }
  throw ResamplingExhausted("could not sample a point of P^1");
}

bool hits(std::span<const ProjPoint> avoid, const ProjPoint& x) {
  for (const auto& p : avoid)
    if (p == x) return true;
  return false;
}

}  // namespace

ProjPoint make_point(const PrimeField& f, std::array<u64, 4> raw) {
  std::size_t lead = 4;
  for (std::size_t i = 0; i < 4; ++i) {
    raw[i] %= f.modulus();
    if (lead == 4 && raw[i] != 0) lead = i;
  }
  if (lead == 4) throw std::invalid_argument("zero vector is not a point");
  u64 s = f.inv(raw[lead]);
  ProjPoint p;
  for (std::size_t i = 0; i < 4; ++i) p.c[i] = f.mul(raw[i], s);
  return p;
}

P1Point make_p1(const PrimeField& f, u64 s, u64 t) {
  s %= f.modulus();
  t %= f.modulus();
  if (s == 0 && t == 0)
    throw std::invalid_argument("zero vector is not a point");
  u64 d = f.inv(s != 0 ? s : t);
  return P1Point{f.mul(s, d), f.mul(t, d)};
}

LineP3 make_line(const PrimeField& f, const ProjPoint& a, const ProjPoint& b) {
  LineP3 l{make_point(f, a.c), make_point(f, b.c)};
  if (l.a == l.b) throw std::invalid_argument("line needs two distinct points");
  return l;
}

ProjPoint line_point(const PrimeField& f, const LineP3& l, u64 s, u64 t) {
  s %= f.modulus();
  t %= f.modulus();
  if (s == 0 && t == 0)
    throw std::invalid_argument("line_point needs (s:t) != (0:0)");
  std::array<u64, 4> raw;
  for (std::size_t i = 0; i < 4; ++i)
    raw[i] = f.add(f.mul(s, l.a.c[i]), f.mul(t, l.b.c[i]));
  return make_point(f, raw);
}

PlaneP3 make_plane(const PrimeField& f, std::array<u64, 4> coeffs) {
  PlaneP3 h;
  bool nonzero = false;
  for (std::size_t i = 0; i < 4; ++i) {
    coeffs[i] %= f.modulus();
    nonzero = nonzero || coeffs[i] != 0;
  }
  if (!nonzero) throw std::invalid_argument("plane needs a nonzero form");
  h.coeffs = coeffs;
  FMatrix m(1, 4);
  for (std::size_t i = 0; i < 4; ++i) m.at(0, i) = coeffs[i];
  auto ker = kernel_basis(m, f);
  for (std::size_t k = 0; k < 3; ++k)
    h.basis[k] = make_point(f, {ker[k][0], ker[k][1], ker[k][2], ker[k][3]});
  return h;
}

ProjPoint plane_point(const PrimeField& f, const PlaneP3& h,
                      std::array<u64, 3> u) {
  std::array<u64, 4> raw{0, 0, 0, 0};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 4; ++i)
      raw[i] = f.add(raw[i], f.mul(u[k] % f.modulus(), h.basis[k].c[i]));
  return make_point(f, raw);
}

std::array<u64, 3> plane_coords(const PrimeField& f, const PlaneP3& h,
                                const ProjPoint& x) {
  FMatrix m(4, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 3; ++k) m.at(i, k) = h.basis[k].c[i];
  auto u = solve(m, {x.c[0], x.c[1], x.c[2], x.c[3]}, f);
  if (!u) throw std::invalid_argument("plane_coords of a point off the plane");
  return {(*u)[0], (*u)[1], (*u)[2]};
}

QuadricP3 make_quadric(
    const PrimeField& f,
    const std::array<std::array<std::array<u64, 4>, 2>, 2>& tensor) {
  QuadricP3 q;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < 4; ++c)
        q.tensor[i][j][c] = tensor[i][j][c] % f.modulus();
  auto inv = inverse(tensor_matrix(q), f);
  if (!inv)
    throw std::invalid_argument("quadric tensor slices must span F^4");
  /* Pull the Segre form z00 z11 - z01 z10 back through the inverse of the
     parametrization. */
  u64 half = f.inv(2);
  FMatrix e(4, 4);
  e.at(zidx(0, 0), zidx(1, 1)) = half;
  e.at(zidx(1, 1), zidx(0, 0)) = half;
  e.at(zidx(0, 1), zidx(1, 0)) = f.neg(half);
  e.at(zidx(1, 0), zidx(0, 1)) = f.neg(half);
  FMatrix s = matmul(matmul(transpose(*inv), e, f), *inv, f);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) q.form[i][j] = s.at(i, j);
  return q;
}

ProjPoint quadric_point(const PrimeField& f, const QuadricP3& q, P1Point st,
                        P1Point uv) {
  std::array<u64, 2> a{st.s, st.t};
  std::array<u64, 2> b{uv.s, uv.t};
  std::array<u64, 4> raw{0, 0, 0, 0};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      u64 z = f.mul(a[std::size_t(i)], b[std::size_t(j)]);
      if (z == 0) continue;
      for (std::size_t c = 0; c < 4; ++c)
        raw[c] = f.add(raw[c], f.mul(z, q.tensor[i][j][c]));
    }
  return make_point(f, raw);
}

u64 quadric_bilinear(const PrimeField& f, const QuadricP3& q,
                     const ProjPoint& x, const ProjPoint& y) {
  u64 acc = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (x.c[i] == 0) continue;
    u64 row = 0;
    for (std::size_t j = 0; j < 4; ++j)
      row = f.add(row, f.mul(q.form[i][j], y.c[j]));
    acc = f.add(acc, f.mul(x.c[i], row));
  }
  return acc;
}

u64 quadric_eval(const PrimeField& f, const QuadricP3& q, const ProjPoint& x) {
  return quadric_bilinear(f, q, x, x);
}

QuadricParams quadric_params(const PrimeField& f, const QuadricP3& q,
                             const ProjPoint& x) {
  if (quadric_eval(f, q, x) != 0)
    throw std::invalid_argument("quadric_params of a point off the quadric");
  auto inv = inverse(tensor_matrix(q), f);
  if (!inv)
    throw std::invalid_argument("quadric tensor slices must span F^4");
  std::array<u64, 4> z{0, 0, 0, 0};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      z[i] = f.add(z[i], f.mul(inv->at(i, j), x.c[j]));
  /* z is a rank one 2x2 matrix (st)^T (uv); read the factors off a nonzero
     row and column. */
  QuadricParams out;
  if (z[zidx(0, 0)] != 0 || z[zidx(0, 1)] != 0)
    out.uv = make_p1(f, z[zidx(0, 0)], z[zidx(0, 1)]);
  else
    out.uv = make_p1(f, z[zidx(1, 0)], z[zidx(1, 1)]);
  if (z[zidx(0, 0)] != 0 || z[zidx(1, 0)] != 0)
    out.st = make_p1(f, z[zidx(0, 0)], z[zidx(1, 0)]);
  else
    out.st = make_p1(f, z[zidx(0, 1)], z[zidx(1, 1)]);
  return out;
}

LineP3 ruling_line(const PrimeField& f, const QuadricP3& q, RulingType type,
                   P1Point fixed) {
  P1Point zero{1, 0};
  P1Point infty{0, 1};
  if (type == RulingType::FirstFixed)
    return make_line(f, quadric_point(f, q, fixed, zero),
                     quadric_point(f, q, fixed, infty));
  return make_line(f, quadric_point(f, q, zero, fixed),
                   quadric_point(f, q, infty, fixed));
}

LineP3 ruling_line_through(const PrimeField& f, const QuadricP3& q,
                           RulingType type, const ProjPoint& x) {
  QuadricParams pr = quadric_params(f, q, x);
  return ruling_line(f, q, type,
                     type == RulingType::FirstFixed ? pr.st : pr.uv);
}

ConicInPlane make_conic(const PrimeField& f, const PlaneP3& plane,
                        const std::array<std::array<u64, 3>, 3>& param) {
  ConicInPlane c;
  c.plane = plane;
  FMatrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      c.param[i][j] = param[i][j] % f.modulus();
      m.at(i, j) = c.param[i][j];
    }
  auto inv = inverse(m, f);
  if (!inv) throw std::invalid_argument("conic parametrization is degenerate");
  /* Pull (s^2)(t^2) - (st)^2 back through the inverse. */
  u64 half = f.inv(2);
  FMatrix e(3, 3);
  e.at(0, 2) = half;
  e.at(2, 0) = half;
  e.at(1, 1) = f.neg(1);
  FMatrix s = matmul(matmul(transpose(*inv), e, f), *inv, f);
  c.coeffs = {s.at(0, 0), s.at(1, 1), s.at(2, 2),
              f.add(s.at(0, 1), s.at(0, 1)), f.add(s.at(0, 2), s.at(0, 2)),
              f.add(s.at(1, 2), s.at(1, 2))};
  return c;
}

ProjPoint conic_point(const PrimeField& f, const ConicInPlane& c, P1Point st) {
  std::array<u64, 3> w{f.mul(st.s, st.s), f.mul(st.s, st.t),
                       f.mul(st.t, st.t)};
  std::array<u64, 3> u{0, 0, 0};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      u[i] = f.add(u[i], f.mul(c.param[i][j], w[j]));
  return plane_point(f, c.plane, u);
}

u64 conic_eval(const PrimeField& f, const ConicInPlane& c,
               std::array<u64, 3> u) {
  for (auto& v : u) v %= f.modulus();
  u64 acc = f.mul(c.coeffs[0], f.mul(u[0], u[0]));
  acc = f.add(acc, f.mul(c.coeffs[1], f.mul(u[1], u[1])));
  acc = f.add(acc, f.mul(c.coeffs[2], f.mul(u[2], u[2])));
  acc = f.add(acc, f.mul(c.coeffs[3], f.mul(u[0], u[1])));
  acc = f.add(acc, f.mul(c.coeffs[4], f.mul(u[0], u[2])));
  acc = f.add(acc, f.mul(c.coeffs[5], f.mul(u[1], u[2])));
  return acc;
}

u64 conic_bilinear(const PrimeField& f, const ConicInPlane& c,
                   std::array<u64, 3> u, std::array<u64, 3> v) {
  u64 half = f.inv(2);
  std::array<std::array<u64, 3>, 3> s{};
  s[0][0] = c.coeffs[0];
  s[1][1] = c.coeffs[1];
  s[2][2] = c.coeffs[2];
  s[0][1] = s[1][0] = f.mul(c.coeffs[3], half);
  s[0][2] = s[2][0] = f.mul(c.coeffs[4], half);
  s[1][2] = s[2][1] = f.mul(c.coeffs[5], half);
  u64 acc = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      acc = f.add(acc, f.mul(u[i] % f.modulus(),
                             f.mul(s[i][j], v[j] % f.modulus())));
  return acc;
}

bool on_plane(const PrimeField& f, const PlaneP3& h, const ProjPoint& x) {
  u64 acc = 0;
  for (std::size_t i = 0; i < 4; ++i)
    acc = f.add(acc, f.mul(h.coeffs[i], x.c[i]));
  return acc == 0;
}

bool on_line(const PrimeField& f, const LineP3& l, const ProjPoint& x) {
  FMatrix m(3, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    m.at(0, i) = l.a.c[i];
    m.at(1, i) = l.b.c[i];
    m.at(2, i) = x.c[i];
  }
  return rank(m, f) == 2;
}

bool on_quadric(const PrimeField& f, const QuadricP3& q, const ProjPoint& x) {
  return quadric_eval(f, q, x) == 0;
}

bool on_conic(const PrimeField& f, const ConicInPlane& c, const ProjPoint& x) {
  if (!on_plane(f, c.plane, x)) return false;
  return conic_eval(f, c, plane_coords(f, c.plane, x)) == 0;
}

LineLineRel line_line(const PrimeField& f, const LineP3& l1,
                      const LineP3& l2) {
  FMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    m.at(0, i) = l1.a.c[i];
    m.at(1, i) = l1.b.c[i];
    m.at(2, i) = l2.a.c[i];
    m.at(3, i) = l2.b.c[i];
  }
  std::size_t r = rank(m, f);
  if (r == 4) return {LineLineKind::Skew, std::nullopt};
  if (r == 2) return {LineLineKind::Equal, std::nullopt};
  /* r == 3: s a1 + t b1 = u a2 + v b2 has a line of solutions; any kernel
     vector of the column matrix gives the meet. */
  FMatrix k(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    k.at(i, 0) = l1.a.c[i];
    k.at(i, 1) = l1.b.c[i];
    k.at(i, 2) = l2.a.c[i];
    k.at(i, 3) = l2.b.c[i];
  }
  auto ker = kernel_basis(k, f);
  const auto& w = ker.front();
  std::array<u64, 4> raw;
  for (std::size_t i = 0; i < 4; ++i)
    raw[i] = f.add(f.mul(w[0], l1.a.c[i]), f.mul(w[1], l1.b.c[i]));
  return {LineLineKind::Meet, make_point(f, raw)};
}

LinePlaneRel line_plane(const PrimeField& f, const LineP3& l,
                        const PlaneP3& h) {
  u64 fa = 0, fb = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    fa = f.add(fa, f.mul(h.coeffs[i], l.a.c[i]));
    fb = f.add(fb, f.mul(h.coeffs[i], l.b.c[i]));
  }
  if (fa == 0 && fb == 0) return {true, std::nullopt};
  return {false, line_point(f, l, fb, f.neg(fa))};
}

LineQuadricRel line_quadric(const PrimeField& f, const LineP3& l,
                            const QuadricP3& q) {
  u64 qa = quadric_eval(f, q, l.a);
  u64 qb = quadric_eval(f, q, l.b);
  u64 h = quadric_bilinear(f, q, l.a, l.b);
  if (qa == 0 && qb == 0 && h == 0)
    return {LineQuadricKind::Contained, std::nullopt, std::nullopt};
  /* Restriction is qa s^2 + 2h st + qb t^2; its reduced discriminant
     decides the split. */
  u64 disc = f.sub(f.mul(h, h), f.mul(qa, qb));
  if (disc == 0) {
    ProjPoint p =
        qa != 0 ? line_point(f, l, f.neg(h), qa) : l.a;  /* qa=0 forces h=0 */
    return {LineQuadricKind::Tangent, p, std::nullopt};
  }
  if (!f.is_square(disc))
    return {LineQuadricKind::NoRationalPoint, std::nullopt, std::nullopt};
  u64 r = *f.sqrt(disc);
  if (qa != 0) {
    ProjPoint p1 = line_point(f, l, f.sub(r, h), qa);
    ProjPoint p2 = line_point(f, l, f.neg(f.add(h, r)), qa);
    return {LineQuadricKind::TwoPoints, p1, p2};
  }
  /* qa = 0: the roots are t = 0 and 2h s + qb t = 0, with h != 0 here. */
  ProjPoint p2 = line_point(f, l, f.neg(qb), f.add(h, h));
  return {LineQuadricKind::TwoPoints, l.a, p2};
}

ProjPoint sample_point(Rng& rng, const PrimeField& f,
                       std::span<const ProjPoint> avoid) {
  for (int it = 0; it < kResampleBudget; ++it) {
    std::array<u64, 4> raw;
    bool nonzero = false;
    for (auto& v : raw) {
      v = f.sample(rng);
      nonzero = nonzero || v != 0;
    }
    if (!nonzero) continue;
    ProjPoint p = make_point(f, raw);
    if (hits(avoid, p)) continue;
    return p;
  }
  throw ResamplingExhausted("could not sample a point of P^3");
}

ProjPoint sample_point_on_plane(Rng& rng, const PrimeField& f,
                                const PlaneP3& h,
                                std::span<const ProjPoint> avoid) {
  for (int it = 0; it < kResampleBudget; ++it) {
    std::array<u64, 3> u;
    bool nonzero = false;
    for (auto& v : u) {
      v = f.sample(rng);
      nonzero = nonzero || v != 0;
    }
    if (!nonzero) continue;
    ProjPoint p = plane_point(f, h, u);
    if (hits(avoid, p)) continue;
    return p;
  }
  throw ResamplingExhausted("could not sample a point of the plane");
}

ProjPoint sample_point_on_line(Rng& rng, const PrimeField& f, const LineP3& l,
                               std::span<const ProjPoint> avoid) {
  for (int it = 0; it < kResampleBudget; ++it) {
    u64 s = f.sample(rng);
    u64 t = f.sample(rng);
    if (s == 0 && t == 0) continue;
    ProjPoint p = line_point(f, l, s, t);
    if (hits(avoid, p)) continue;
    return p;
  }
  throw ResamplingExhausted("could not sample a point of the line");
}

ProjPoint sample_point_on_quadric(Rng& rng, const PrimeField& f,
                                  const QuadricP3& q,
                                  std::span<const ProjPoint> avoid) {
  for (int it = 0; it < kResampleBudget; ++it) {
    u64 s = f.sample(rng);
    u64 t = f.sample(rng);
    u64 u = f.sample(rng);
    u64 v = f.sample(rng);
    if ((s == 0 && t == 0) || (u == 0 && v == 0)) continue;
    ProjPoint p =
        quadric_point(f, q, make_p1(f, s, t), make_p1(f, u, v));
    if (hits(avoid, p)) continue;
    return p;
  }
  throw ResamplingExhausted("could not sample a point of the quadric");
}

ProjPoint sample_point_on_conic(Rng& rng, const PrimeField& f,
                                const ConicInPlane& c,
                                std::span<const ProjPoint> avoid) {
  for (int it = 0; it < kResampleBudget; ++it) {
    u64 s = f.sample(rng);
    u64 t = f.sample(rng);
    if (s == 0 && t == 0) continue;
    ProjPoint p = conic_point(f, c, make_p1(f, s, t));
    if (hits(avoid, p)) continue;
    return p;
  }
  throw ResamplingExhausted("could not sample a point of the conic");
}

LineP3 sample_line(Rng& rng, const PrimeField& f) {
  ProjPoint a = sample_point(rng, f);
  ProjPoint b = sample_point(rng, f, std::span<const ProjPoint>{&a, 1});
  return make_line(f, a, b);
}

LineP3 sample_line_through(Rng& rng, const PrimeField& f, const ProjPoint& p) {
  ProjPoint b = sample_point(rng, f, std::span<const ProjPoint>{&p, 1});
  return make_line(f, p, b);
}

LineP3 sample_line_in_plane(Rng& rng, const PrimeField& f, const PlaneP3& h) {
  ProjPoint a = sample_point_on_plane(rng, f, h);
  ProjPoint b =
      sample_point_on_plane(rng, f, h, std::span<const ProjPoint>{&a, 1});
  return make_line(f, a, b);
}

LineP3 sample_line_in_plane_through(Rng& rng, const PrimeField& f,
                                    const PlaneP3& h, const ProjPoint& p) {
  if (!on_plane(f, h, p))
    throw std::invalid_argument("pivot point is off the plane");
  ProjPoint b =
      sample_point_on_plane(rng, f, h, std::span<const ProjPoint>{&p, 1});
  return make_line(f, p, b);
}

LineP3 sample_ruling_line(Rng& rng, const PrimeField& f, const QuadricP3& q,
                          RulingType type) {
  return ruling_line(f, q, type, sample_p1(rng, f));
}

PlaneP3 sample_plane(Rng& rng, const PrimeField& f) {
  for (int it = 0; it < kResampleBudget; ++it) {
    std::array<u64, 4> c;
    bool nonzero = false;
    for (auto& v : c) {
      v = f.sample(rng);
      nonzero = nonzero || v != 0;
    }
    if (!nonzero) continue;
    return make_plane(f, c);
  }
  throw ResamplingExhausted("could not sample a plane");
}

PlaneP3 sample_plane_through(Rng& rng, const PrimeField& f,
                             const ProjPoint& p) {
  FMatrix m(1, 4);
  for (std::size_t i = 0; i < 4; ++i) m.at(0, i) = p.c[i];
  auto ker = kernel_basis(m, f);
  for (int it = 0; it < kResampleBudget; ++it) {
    u64 c0 = f.sample(rng);
    u64 c1 = f.sample(rng);
    u64 c2 = f.sample(rng);
    if (c0 == 0 && c1 == 0 && c2 == 0) continue;
    std::array<u64, 4> coeffs;
    for (std::size_t i = 0; i < 4; ++i)
      coeffs[i] = f.add(f.mul(c0, ker[0][i]),
                        f.add(f.mul(c1, ker[1][i]), f.mul(c2, ker[2][i])));
    return make_plane(f, coeffs);
  }
  throw ResamplingExhausted("could not sample a plane through the point");
}

QuadricP3 sample_quadric(Rng& rng, const PrimeField& f) {
  for (int it = 0; it < kResampleBudget; ++it) {
    std::array<std::array<std::array<u64, 4>, 2>, 2> tensor;
    FMatrix m(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int c = 0; c < 4; ++c) {
          tensor[i][j][std::size_t(c)] = f.sample(rng);
          m.at(std::size_t(c), zidx(i, j)) = tensor[i][j][std::size_t(c)];
        }
    if (!inverse(m, f)) continue;
    return make_quadric(f, tensor);
  }
  throw ResamplingExhausted("could not sample a smooth quadric");
}

ConicInPlane sample_conic_in_plane(Rng& rng, const PrimeField& f,
                                   const PlaneP3& h,
                                   std::span<const ProjPoint> avoid) {
  for (int it = 0; it < kResampleBudget; ++it) {
    std::array<std::array<u64, 3>, 3> param;
    FMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        param[i][j] = f.sample(rng);
        m.at(i, j) = param[i][j];
      }
    if (!inverse(m, f)) continue;
    ConicInPlane c = make_conic(f, h, param);
    bool bad = false;
    for (const auto& p : avoid)
      if (on_conic(f, c, p)) bad = true;
    if (bad) continue;
    return c;
  }
  throw ResamplingExhausted("could not sample a conic in the plane");
}

}  // namespace postlab
