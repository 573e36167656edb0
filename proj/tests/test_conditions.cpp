#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gen.hpp"
#include "postlab/conditions.hpp"
#include "postlab/errors.hpp"
#include "postlab/postnum.hpp"

using namespace postlab;

namespace {

ProjPoint pt(const PrimeField& f, u64 a, u64 b, u64 c, u64 d) {
  return make_point(f, {a, b, c, d});
}

u64 dot_row(const PrimeField& f, const FMatrix& m, std::size_t r,
            const std::vector<u64>& v) {
  u64 acc = 0;
  for (std::size_t c = 0; c < m.cols; ++c)
    acc = f.add(acc, f.mul(m.at(r, c), v[c]));
  return acc;
}

/* Every row of `sub` lies in the row space of `big` iff it annihilates the
   kernel of `big`. */
void check_rows_in_span(const PrimeField& f, const FMatrix& big,
                        const FMatrix& sub) {
  auto ker = kernel_basis(big, f);
  for (std::size_t r = 0; r < sub.rows; ++r)
    for (const auto& v : ker) CHECK(dot_row(f, sub, r, v) == 0);
}

}  // namespace

TEST_CASE("column counts and the empty union") {
  PrimeField f(101);
  UnionScheme empty = UnionScheme::build(f, {});
  for (int t = 0; t <= 6; ++t) {
    auto coh = instance_cohomology(f, empty, t);
    CHECK(coh.n_forms == binom(t + 3, 3));
    CHECK(coh.h0 == binom(t + 3, 3));
    CHECK(coh.h1 == 0);
  }

  PlaneP3 h = make_plane(f, {0, 0, 0, 1});
  TraceScheme tr_h{Surface{h}, {}};
  CHECK(build_plane(f, tr_h, 4).matrix.cols == (std::size_t)binom(6, 2));

  QuadricP3 q = testgen::segre_quadric(f);
  TraceScheme tr_q{Surface{q}, {}};
  CHECK(build_quadric(f, tr_q, 2, 1).matrix.cols == 6);
  auto coh_q = trace_cohomology(f, tr_q, 2);
  CHECK(coh_q.n_forms == 9);
  CHECK(coh_q.h0 == 9);
}

TEST_CASE("three skew lines at twist two") {
  PrimeField f(101);
  auto x = UnionScheme::build(
      f, {LineComp{make_line(f, pt(f, 1, 0, 0, 0), pt(f, 0, 1, 0, 0))},
          LineComp{make_line(f, pt(f, 0, 0, 1, 0), pt(f, 0, 0, 0, 1))},
          LineComp{make_line(f, pt(f, 1, 0, 1, 0), pt(f, 0, 1, 0, 1))}});
  auto cm = build_p3(f, x, 2);
  CHECK(cm.matrix.rows == 9);
  CHECK(cm.matrix.cols == 10);
  CHECK(rank(cm.matrix, f) == 9);
  auto coh = instance_cohomology(f, x, 2);
  CHECK(coh.h0 == 1);
  CHECK(coh.h1 == 0);

  REQUIRE(cm.rows.size() == 9);
  for (std::size_t r = 0; r < 9; ++r) {
    CHECK(cm.rows[r].component == r / 3);
    CHECK(cm.rows[r].kind == RowKind::LineSample);
    CHECK(cm.rows[r].index == (int)(r % 3));
  }

  // two skew lines at twist one fill the whole space of linear forms
  auto x2 = UnionScheme::build(
      f, {LineComp{make_line(f, pt(f, 1, 0, 0, 0), pt(f, 0, 1, 0, 0))},
          LineComp{make_line(f, pt(f, 0, 0, 1, 0), pt(f, 0, 0, 0, 1))}});
  auto coh2 = instance_cohomology(f, x2, 1);
  CHECK(coh2.h0 == 0);
  CHECK(coh2.h1 == 0);
}

TEST_CASE("fat point jet rows") {
  PrimeField f(101);

  SUBCASE("frozen 4x4 frame matrix at twist one") {
    auto p = pt(f, 1, 2, 3, 4);
    auto cm = build_p3(f, UnionScheme::build(f, {FatPoint{p, 2}}), 1);
    REQUIRE(cm.matrix.rows == 4);
    REQUIRE(cm.matrix.cols == 4);
    // row 0 is evaluation at the center, rows 1..3 pick out the coefficients
    // of the complementary frame vectors
    const u64 expect[4][4] = {
        {1, 2, 3, 4}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(cm.matrix.at(r, c) == expect[r][c]);
    CHECK(rank(cm.matrix, f) == 4);
    for (int r = 0; r < 4; ++r) CHECK(cm.rows[r].kind == RowKind::FatJet);
  }

  SUBCASE("multiplicity one equals plain evaluation") {
    auto p = pt(f, 5, 7, 0, 11);
    auto fatm = build_p3(f, UnionScheme::build(f, {FatPoint{p, 1}}), 3);
    auto evalm = build_p3(f, UnionScheme::build(f, {SimplePoint{p}}), 3);
    REQUIRE(fatm.matrix.rows == 1);
    for (std::size_t c = 0; c < fatm.matrix.cols; ++c)
      CHECK(fatm.matrix.at(0, c) == evalm.matrix.at(0, c));
  }

  SUBCASE("jets are independent for random centers") {
    PrimeField big(2147483647);
    Rng rng(5150);
    for (int m = 1; m <= 6; ++m) {
      for (int t = m - 1; t <= m + 1; ++t) {
        auto p = sample_point(rng, big);
        auto cm = build_p3(big, UnionScheme::build(big, {FatPoint{p, m}}), t);
        CHECK((i64)cm.matrix.rows == fatpoint_degree(m));
        CHECK((i64)rank(cm.matrix, big) == fatpoint_degree(m));
      }
    }
  }

  SUBCASE("kernel sits inside the lower-order kernel") {
    Rng rng(99);
    PrimeField big(2147483647);
    auto p = sample_point(rng, big);
    for (int m = 3; m >= 2; --m) {
      auto hi = build_p3(big, UnionScheme::build(big, {FatPoint{p, m}}), 4);
      auto lo =
          build_p3(big, UnionScheme::build(big, {FatPoint{p, m - 1}}), 4);
      check_rows_in_span(big, hi.matrix, lo.matrix);
    }
  }

  SUBCASE("first-order part kills the double point kernel") {
    Rng rng(7);
    PrimeField big(2147483647);
    auto p = sample_point(rng, big);
    auto fat2 = build_p3(big, UnionScheme::build(big, {FatPoint{p, 2}}), 3);
    for (int k = 0; k < 3; ++k) {
      auto dir = sample_point(rng, big, std::span(&p, 1));
      auto tv =
          build_p3(big, UnionScheme::build(big, {TangentVector{p, dir}}), 3);
      check_rows_in_span(big, fat2.matrix, tv.matrix);
    }
  }
}

TEST_CASE("tangent vector rows") {
  PrimeField f(101);
  auto e0 = pt(f, 1, 0, 0, 0), e1 = pt(f, 0, 1, 0, 0);

  SUBCASE("frozen derivative row") {
    auto cm =
        build_p3(f, UnionScheme::build(f, {TangentVector{e0, e1}}), 2);
    REQUIRE(cm.matrix.rows == 2);
    CHECK(cm.rows[0].kind == RowKind::Evaluation);
    CHECK(cm.rows[1].kind == RowKind::Derivative);
    // derivative of the degree-two monomials along e1 at e0: only x0 x1
    // survives
    std::size_t nonzero = 0, hit = 0;
    for (std::size_t c = 0; c < 10; ++c) {
      if (cm.matrix.at(1, c) != 0) {
        ++nonzero;
        if (cm.matrix.at(1, c) == 1) hit = c;
      }
    }
    CHECK(nonzero == 1);
    // the x0 x1 column: second monomial in the lexicographic order
    CHECK(hit == 1);
  }

  SUBCASE("vector along a line lies in the line's row space") {
    PrimeField big(2147483647);
    Rng rng(31);
    for (int t = 2; t <= 4; ++t) {
      LineP3 l = sample_line(rng, big);
      auto lm = build_p3(big, UnionScheme::build(big, {LineComp{l}}), t);
      ProjPoint supp = line_point(big, l, 1, 17);
      ProjPoint dir = line_point(big, l, 1, 40);
      auto tm = build_p3(
          big, UnionScheme::build(big, {TangentVector{supp, dir}}), t);
      check_rows_in_span(big, lm.matrix, tm.matrix);
    }
  }

  SUBCASE("decorated vector contributes one derivative row") {
    LineP3 l = make_line(f, e0, pt(f, 0, 0, 0, 1));
    auto x = UnionScheme::build(
        f, {LineComp{l}, TangentVector{e0, e1}});
    auto cm = build_p3(f, x, 2);
    CHECK(cm.matrix.rows == 3 + 1);
    CHECK(cm.rows.back().kind == RowKind::Derivative);
    CHECK(degree(x, 2) == 4);
  }
}

TEST_CASE("extra line samples stay in the row span") {
  PrimeField f(2147483647);
  Rng rng(404);
  for (int t = 1; t <= 4; ++t) {
    LineP3 l = sample_line(rng, f);
    auto lm = build_p3(f, UnionScheme::build(f, {LineComp{l}}), t);
    CHECK((int)rank(lm.matrix, f) == t + 1);
    for (u64 extra : {(u64)t + 1, (u64)t + 5, (u64)77}) {
      auto p = line_point(f, l, 1, extra);
      auto pm = build_p3(f, UnionScheme::build(f, {SimplePoint{p}}), t);
      check_rows_in_span(f, lm.matrix, pm.matrix);
    }
  }
}

TEST_CASE("plane builder") {
  PrimeField f(101);
  PlaneP3 h = make_plane(f, {0, 0, 0, 1});
  auto e0 = pt(f, 1, 0, 0, 0), e1 = pt(f, 0, 1, 0, 0);

  SUBCASE("plane fat point") {
    TraceScheme tr{Surface{h}, {PlaneFatPoint{pt(f, 1, 2, 5, 0), 2}}};
    auto cm = build_plane(f, tr, 2);
    CHECK(cm.matrix.rows == 3);
    CHECK(cm.matrix.cols == 6);
    CHECK(rank(cm.matrix, f) == 3);
    auto coh = trace_cohomology(f, tr, 2);
    CHECK(coh.h0 == 3);
    CHECK(coh.h1 == 0);

    TraceScheme tr3{Surface{h}, {PlaneFatPoint{pt(f, 1, 2, 5, 0), 3}}};
    auto coh3 = trace_cohomology(f, tr3, 2);
    CHECK(coh3.h0 == 0);  // no conic vanishes to order three at a point
    CHECK(coh3.h1 == 0);
  }

  SUBCASE("line in the plane") {
    TraceScheme tr{Surface{h},
                   {TraceLine{make_line(f, e0, e1), RulingType::FirstFixed}}};
    auto coh = trace_cohomology(f, tr, 2);
    CHECK(coh.degree == 3);
    CHECK(coh.h0 == 3);  // conics containing a line: the residual lines
    CHECK(coh.h1 == 0);
  }

  SUBCASE("surface tangent vector consistency with its line") {
    TraceScheme line_tr{
        Surface{h}, {TraceLine{make_line(f, e0, e1), RulingType::FirstFixed}}};
    TraceScheme stv_tr{Surface{h},
                       {SurfaceTangentVector{e0, e1, false}}};
    auto lm = build_plane(f, line_tr, 3);
    auto sm = build_plane(f, stv_tr, 3);
    CHECK(sm.matrix.rows == 2);
    check_rows_in_span(f, lm.matrix, sm.matrix);

    TraceScheme dec{Surface{h}, {SurfaceTangentVector{e0, e1, true}}};
    CHECK(build_plane(f, dec, 3).matrix.rows == 1);
  }

  SUBCASE("smooth conic") {
    std::array<std::array<u64, 3>, 3> ident{};
    ident[0][0] = ident[1][1] = ident[2][2] = 1;
    ConicInPlane conic = make_conic(f, h, ident);
    TraceScheme tr{Surface{h}, {TraceConic{conic}}};
    auto coh1 = trace_cohomology(f, tr, 1);
    CHECK(coh1.degree == 3);
    CHECK(coh1.h0 == 0);  // no line contains a smooth conic
    auto coh2 = trace_cohomology(f, tr, 2);
    CHECK(coh2.degree == 5);
    CHECK(coh2.h0 == 1);  // exactly the conic's own equation
    CHECK(coh2.h1 == 0);
  }
}

TEST_CASE("quadric builder") {
  PrimeField f(101);
  QuadricP3 q = testgen::segre_quadric(f);
  auto e0 = pt(f, 1, 0, 0, 0), e1 = pt(f, 0, 1, 0, 0), e2 = pt(f, 0, 0, 1, 0);

  SUBCASE("ruling line sample counts") {
    TraceScheme first{Surface{q},
                      {TraceLine{make_line(f, e0, e1), RulingType::FirstFixed}}};
    auto cm = build_quadric(f, first, 3, 1);
    CHECK(cm.matrix.rows == 2);
    CHECK(cm.matrix.cols == 8);
    CHECK(rank(cm.matrix, f) == 2);

    TraceScheme second{
        Surface{q}, {TraceLine{make_line(f, e0, e2), RulingType::SecondFixed}}};
    auto cm2 = build_quadric(f, second, 3, 3);
    CHECK(cm2.matrix.rows == 4);
    CHECK(cm2.matrix.cols == 16);
    auto coh = trace_cohomology(f, second, 3);
    CHECK(coh.h0 == 12);
    CHECK(coh.h1 == 0);
  }

  SUBCASE("four general points at bidegree one-one") {
    PrimeField big(2147483647);
    QuadricP3 qb = testgen::segre_quadric(big);
    Rng rng(1234);
    std::vector<TraceItem> items;
    std::vector<ProjPoint> seen;
    while (items.size() < 4) {
      auto p = sample_point_on_quadric(rng, big, qb,
                                       std::span(seen.data(), seen.size()));
      seen.push_back(p);
      items.push_back(SurfacePoint{p});
    }
    TraceScheme tr{Surface{qb}, items};
    auto cm = build_quadric(big, tr, 1, 1);
    CHECK(cm.matrix.rows == 4);
    CHECK(rank(cm.matrix, big) == 4);
  }

  SUBCASE("tangent vector along a ruling line stays in its span") {
    TraceScheme line_tr{
        Surface{q}, {TraceLine{make_line(f, e0, e1), RulingType::FirstFixed}}};
    TraceScheme stv_tr{Surface{q}, {SurfaceTangentVector{e0, e1, false}}};
    auto lm = build_quadric(f, line_tr, 2, 2);
    auto sm = build_quadric(f, stv_tr, 2, 2);
    CHECK(sm.matrix.rows == 2);
    check_rows_in_span(f, lm.matrix, sm.matrix);
    TraceScheme dec{Surface{q}, {SurfaceTangentVector{e0, e1, true}}};
    CHECK(build_quadric(f, dec, 2, 2).matrix.rows == 1);
  }

  SUBCASE("general tangent vector of the quadric") {
    PrimeField big(2147483647);
    QuadricP3 qb = testgen::segre_quadric(big);
    Rng rng(808);
    auto supp = sample_point_on_quadric(rng, big, qb);
    auto tp = testgen::tangent_plane(big, qb, supp);
    auto dir = sample_point_on_plane(rng, big, tp, std::span(&supp, 1));
    TraceScheme tr{Surface{qb}, {SurfaceTangentVector{supp, dir, false}}};
    auto cm = build_quadric(big, tr, 2, 2);
    CHECK(cm.matrix.rows == 2);
    CHECK(rank(cm.matrix, big) == 2);
  }
}

TEST_CASE("a double point and six skew lines at twist four") {
  PrimeField f(2147483647);
  Rng rng(42424242);
  ProjPoint p = sample_point(rng, f);
  std::vector<SchemeComponent> comps{FatPoint{p, 2}};
  std::vector<LineP3> ls;
  while (ls.size() < 6) {
    LineP3 cand = sample_line(rng, f);
    if (on_line(f, cand, p)) continue;
    bool ok = true;
    for (const auto& prev : ls)
      if (line_line(f, prev, cand).kind != LineLineKind::Skew) ok = false;
    if (!ok) continue;
    ls.push_back(cand);
    comps.push_back(LineComp{cand});
  }
  auto x = UnionScheme::build(f, comps);
  auto coh = instance_cohomology(f, x, 4);
  CHECK(coh.degree == 34);
  CHECK(coh.n_forms == 35);
  CHECK(coh.h0 == 1);
  CHECK(coh.h1 == 0);
}

TEST_CASE("cohomology identities on random unions") {
  PrimeField f(2147483647);
  for (u64 seed = 0; seed < 30; ++seed) {
    Rng rng(Rng::mix({31337, seed}));
    auto inst = testgen::random_instance(f, rng);
    auto coh = instance_cohomology(f, inst.x, inst.twist);
    CHECK(coh.h0 - coh.h1 == coh.n_forms - coh.degree);
    CHECK(coh.h0 >= 0);
    CHECK(coh.h1 >= 0);
  }
}

TEST_CASE("small field and twist guards") {
  PrimeField f5(5);
  auto e0 = pt(f5, 1, 0, 0, 0), e1 = pt(f5, 0, 1, 0, 0);
  auto line_union =
      UnionScheme::build(f5, {LineComp{make_line(f5, e0, e1)}});
  CHECK_THROWS_AS(build_p3(f5, line_union, 4), FieldTooSmall);
  CHECK(build_p3(f5, line_union, 3).matrix.rows == 4);

  PlaneP3 h5 = make_plane(f5, {0, 0, 0, 1});
  std::array<std::array<u64, 3>, 3> ident{};
  ident[0][0] = ident[1][1] = ident[2][2] = 1;
  TraceScheme conic_tr{Surface{h5}, {TraceConic{make_conic(f5, h5, ident)}}};
  CHECK_THROWS_AS(build_plane(f5, conic_tr, 3), FieldTooSmall);

  QuadricP3 q5 = testgen::segre_quadric(f5);
  TraceScheme line_tr{
      Surface{q5},
      {TraceLine{make_line(f5, e0, e1), RulingType::FirstFixed}}};
  CHECK_THROWS_AS(build_quadric(f5, line_tr, 4, 2), FieldTooSmall);
  CHECK(build_quadric(f5, line_tr, 3, 3).matrix.rows == 4);

  PrimeField f(101);
  auto fat = UnionScheme::build(f, {FatPoint{pt(f, 1, 1, 1, 1), 3}});
  CHECK_THROWS_AS(instance_cohomology(f, fat, 1), DegreeUndefined);
  CHECK_THROWS_AS(build_p3(f, fat, -1), DegreeUndefined);
}
