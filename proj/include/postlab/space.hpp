#ifndef POSTLAB_SPACE_HPP
#define POSTLAB_SPACE_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "postlab/exactlin.hpp"
#include "postlab/rng.hpp"

namespace postlab {

/* Retry budget shared by all constrained samplers. */
inline constexpr int kResampleBudget = 64;

/* Point of P^3 with the first nonzero coordinate scaled to 1, so equality is
   plain comparison. */
struct ProjPoint {
  std::array<u64, 4> c{0, 0, 0, 0};
  bool operator==(const ProjPoint&) const = default;
};
ProjPoint make_point(const PrimeField& f, std::array<u64, 4> raw);

/* Point of P^1, normalized the same way. */
struct P1Point {
  u64 s = 0;
  u64 t = 0;
  bool operator==(const P1Point&) const = default;
};
P1Point make_p1(const PrimeField& f, u64 s, u64 t);

/* Line as the span of two distinct points. */
struct LineP3 {
  ProjPoint a, b;
};
LineP3 make_line(const PrimeField& f, const ProjPoint& a, const ProjPoint& b);
/* s a + t b. */
ProjPoint line_point(const PrimeField& f, const LineP3& l, u64 s, u64 t);

/* Plane as a linear form plus three spanning points (kept so that points of
   the plane have stable in-plane coordinates). */
struct PlaneP3 {
  std::array<u64, 4> coeffs{0, 0, 0, 0};
  std::array<ProjPoint, 3> basis;
};
PlaneP3 make_plane(const PrimeField& f, std::array<u64, 4> coeffs);
/* u0 B0 + u1 B1 + u2 B2. */
ProjPoint plane_point(const PrimeField& f, const PlaneP3& h,
                      std::array<u64, 3> u);
/* Inverse of plane_point; the point must lie on the plane. */
std::array<u64, 3> plane_coords(const PrimeField& f, const PlaneP3& h,
                                const ProjPoint& x);

/* Smooth quadric, stored as a bilinear parametrization of P^1 x P^1:
   coordinate c of the image of ((s:t),(u:v)) is
   sum_{i,j} tensor[i][j][c] (s,t)_i (u,v)_j, with the four slices spanning
   F^4 (checked).  The quadratic form is recovered at construction. */
struct QuadricP3 {
  std::array<std::array<std::array<u64, 4>, 2>, 2> tensor{};
  /* Symmetric matrix S with Q = { x : x^T S x = 0 }. */
  std::array<std::array<u64, 4>, 4> form{};
};
QuadricP3 make_quadric(const PrimeField& f,
                       const std::array<std::array<std::array<u64, 4>, 2>, 2>&
                           tensor);
ProjPoint quadric_point(const PrimeField& f, const QuadricP3& q, P1Point st,
                        P1Point uv);
u64 quadric_eval(const PrimeField& f, const QuadricP3& q, const ProjPoint& x);
u64 quadric_bilinear(const PrimeField& f, const QuadricP3& q,
                     const ProjPoint& x, const ProjPoint& y);
struct QuadricParams {
  P1Point st, uv;
};
/* Parameters of a point on the quadric. */
QuadricParams quadric_params(const PrimeField& f, const QuadricP3& q,
                             const ProjPoint& x);

/* The two rulings: FirstFixed is the image of {(s:t)} x P^1, SecondFixed the
   image of P^1 x {(u:v)}. */
enum class RulingType { FirstFixed, SecondFixed };
LineP3 ruling_line(const PrimeField& f, const QuadricP3& q, RulingType type,
                   P1Point fixed);

/* Smooth conic inside a plane: quadratic form in the plane's coordinates
   (upper-triangle storage: c00, c11, c22, c01, c02, c12) plus the rational
   parametrization (s:t) -> M (s^2, st, t^2) used for sampling. */
struct ConicInPlane {
  PlaneP3 plane;
  std::array<u64, 6> coeffs{};
  std::array<std::array<u64, 3>, 3> param{};
};
ConicInPlane make_conic(const PrimeField& f, const PlaneP3& plane,
                        const std::array<std::array<u64, 3>, 3>& param);
ProjPoint conic_point(const PrimeField& f, const ConicInPlane& c, P1Point st);
/* The form evaluated at in-plane coordinates. */
u64 conic_eval(const PrimeField& f, const ConicInPlane& c,
               std::array<u64, 3> u);
u64 conic_bilinear(const PrimeField& f, const ConicInPlane& c,
                   std::array<u64, 3> u, std::array<u64, 3> v);

/* Membership predicates. */
bool on_plane(const PrimeField& f, const PlaneP3& h, const ProjPoint& x);
bool on_line(const PrimeField& f, const LineP3& l, const ProjPoint& x);
bool on_quadric(const PrimeField& f, const QuadricP3& q, const ProjPoint& x);
bool on_conic(const PrimeField& f, const ConicInPlane& c, const ProjPoint& x);

/* Pairwise relations. */
enum class LineLineKind { Skew, Meet, Equal };
struct LineLineRel {
  LineLineKind kind = LineLineKind::Skew;
  std::optional<ProjPoint> point;
};
LineLineRel line_line(const PrimeField& f, const LineP3& l1, const LineP3& l2);

struct LinePlaneRel {
  bool contained = false;
  std::optional<ProjPoint> point;
};
LinePlaneRel line_plane(const PrimeField& f, const LineP3& l,
                        const PlaneP3& h);

enum class LineQuadricKind { Contained, Tangent, TwoPoints, NoRationalPoint };
struct LineQuadricRel {
  LineQuadricKind kind = LineQuadricKind::Contained;
  std::optional<ProjPoint> p1, p2;
};
LineQuadricRel line_quadric(const PrimeField& f, const LineP3& l,
                            const QuadricP3& q);

/* Samplers.  Each retries up to kResampleBudget times before throwing
   ResamplingExhausted. */
ProjPoint sample_point(Rng& rng, const PrimeField& f,
                       std::span<const ProjPoint> avoid = {});
ProjPoint sample_point_on_plane(Rng& rng, const PrimeField& f,
                                const PlaneP3& h,
                                std::span<const ProjPoint> avoid = {});
ProjPoint sample_point_on_line(Rng& rng, const PrimeField& f, const LineP3& l,
                               std::span<const ProjPoint> avoid = {});
ProjPoint sample_point_on_quadric(Rng& rng, const PrimeField& f,
                                  const QuadricP3& q,
                                  std::span<const ProjPoint> avoid = {});
ProjPoint sample_point_on_conic(Rng& rng, const PrimeField& f,
                                const ConicInPlane& c,
                                std::span<const ProjPoint> avoid = {});

LineP3 sample_line(Rng& rng, const PrimeField& f);
LineP3 sample_line_through(Rng& rng, const PrimeField& f, const ProjPoint& p);
LineP3 sample_line_in_plane(Rng& rng, const PrimeField& f, const PlaneP3& h);
LineP3 sample_line_in_plane_through(Rng& rng, const PrimeField& f,
                                    const PlaneP3& h, const ProjPoint& p);
LineP3 sample_ruling_line(Rng& rng, const PrimeField& f, const QuadricP3& q,
                          RulingType type);
/* The unique ruling line of the given type through a point of Q. */
LineP3 ruling_line_through(const PrimeField& f, const QuadricP3& q,
                           RulingType type, const ProjPoint& x);

PlaneP3 sample_plane(Rng& rng, const PrimeField& f);
PlaneP3 sample_plane_through(Rng& rng, const PrimeField& f,
                             const ProjPoint& p);
QuadricP3 sample_quadric(Rng& rng, const PrimeField& f);
/* Smooth conic in h passing through none of `avoid`. */
ConicInPlane sample_conic_in_plane(Rng& rng, const PrimeField& f,
                                   const PlaneP3& h,
                                   std::span<const ProjPoint> avoid = {});

}  // namespace postlab

#endif
