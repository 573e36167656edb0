#include <algorithm>
#include <vector>

#include "postlab/certify.hpp"
#include "postlab/errors.hpp"
#include "postlab/space.hpp"

namespace postlab {

namespace {

bool skew_to_all(const PrimeField& f, const LineP3& cand,
                 const std::vector<LineP3>& lines) {
  for (const auto& l : lines)
    if (line_line(f, l, cand).kind != LineLineKind::Skew) return false;
  return true;
}

bool on_any_line(const PrimeField& f, const std::vector<LineP3>& lines,
                 const ProjPoint& x) {
  for (const auto& l : lines)
    if (on_line(f, l, x)) return true;
  return false;
}

/* A line through `base` whose second point stays off the plane h, so the
   line meets h exactly at `base`. */
LineP3 line_off_plane_through(Rng& rng, const PrimeField& f, const PlaneP3& h,
                              const ProjPoint& base, const ProjPoint& avoid_p,
                              const std::vector<LineP3>& skew_against,
                              const std::vector<ProjPoint>& miss) {
  int budget = kResampleBudget;
  for (;;) {
    if (budget-- == 0)
      throw ResamplingExhausted("line through a plane mark");
    ProjPoint second = sample_point(rng, f, std::span(&base, 1));
    if (on_plane(f, h, second)) continue;
    LineP3 cand = make_line(f, base, second);
    if (on_line(f, cand, avoid_p)) continue;
    bool hits = false;
    for (const auto& q : miss)
      if (on_line(f, cand, q)) hits = true;
    if (hits) continue;
    if (!skew_to_all(f, cand, skew_against)) continue;
    return cand;
  }
}

/* A general direction for a tangent vector whose support sits on `carrier`:
   distinct from the support and off the carrier line, which is all the
   union-position rules ask of a decorated tangent vector.  Once any special
   choice of directions reaches the expected rank, so does the general one,
   so nothing forces the directions into the scaffolding surface. */
ProjPoint general_direction(Rng& rng, const PrimeField& f,
                            const ProjPoint& support, const LineP3& carrier) {
  int budget = kResampleBudget;
  for (;;) {
    if (budget-- == 0) throw ResamplingExhausted("tangent vector direction");
    ProjPoint dir = sample_point(rng, f, std::span(&support, 1));
    if (on_line(f, carrier, dir)) continue;
    return dir;
  }
}

i64 ceil_div(i64 n, i64 q) { return (n + q - 1) / q; }

u64 kind_tag(const std::string& kind) {
  u64 tag = 0;
  for (char c : kind) tag = tag * 131 + static_cast<unsigned char>(c);
  return tag;
}

/* Retry harness shared by the three recipes: `retries` attempts on the
   requested prime, then one on each fallback.  Geometric collisions burn
   an attempt; a failed degree identity is a bookkeeping bug and aborts. */
template <typename BuildFn>
WitnessConfig run_witness(const std::string& kind, int m, int k,
                          const CertifyOptions& opt, BuildFn build) {
  const int primary = std::max(1, opt.retries);
  const int total = primary + 2;
  for (int attempt = 0; attempt < total; ++attempt) {
    const u64 prime = attempt < primary ? opt.prime
                                        : kFallbackPrimes[attempt - primary];
    const u64 seed =
        Rng::mix({opt.seed, kind_tag(kind), static_cast<u64>(m),
                  static_cast<u64>(k), prime, static_cast<u64>(attempt)});
    try {
      PrimeField f(prime);
      Rng rng(seed);
      WitnessConfig cfg = build(f, rng);
      cfg.kind = kind;
      cfg.m = m;
      cfg.k = k;
      cfg.prime = prime;
      cfg.seed = opt.seed;
      cfg.attempts = attempt + 1;
      if (cfg.checks.rank_expected) return cfg;
    } catch (const ResamplingExhausted&) {
    } catch (const InvalidUnion&) {
    }
  }
  throw WitnessFailed("witness " + kind + "(m=" + std::to_string(m) +
                      ", k=" + std::to_string(k) +
                      ") not realized within the attempt budget");
}

WitnessChecks measure(const PrimeField& f, const UnionScheme& x, int t,
                      i64 target_degree, i64 want_h0, i64 want_h1) {
  WitnessChecks c;
  c.degree = degree(x, t);
  c.degree_identity = c.degree == target_degree;
  if (!c.degree_identity)
    throw WitnessFailed("witness degree bookkeeping is off: built " +
                        std::to_string(c.degree) + ", recipe promises " +
                        std::to_string(target_degree));
  Cohomology coh = instance_cohomology(f, x, t);
  c.n_forms = coh.n_forms;
  c.rank = coh.rank;
  c.h0 = coh.h0;
  c.h1 = coh.h1;
  c.rank_expected = c.h0 == want_h0 && c.h1 == want_h1;
  return c;
}

}  // namespace

/* One m-fold point on a plane H, a(m, m+2) lines each meeting H in one
   point, the marked ones at collinear points (on L for the first batch, on
   R for the second); for odd m also a tangent vector at every mark and one
   simple point at L cap R.  Total degree C(m+5,3) - 1, so the expected
   cohomology in degree m+2 is h0 = 1, h1 = 0. */
WitnessConfig build_witness_B(int m, const CertifyOptions& opt) {
  if (m < 2) throw InvalidUnion("witness B needs m >= 2");
  const CombinatoricsCell cell = ab(m, m + 2);
  const bool odd = m % 2 == 1;
  const int t = m + 2;
  /* The printed tallies split the marks as ceil/floor of (m+3)/4 for odd m
     and of (m+2)/4 for even m.  For odd m the two shares add up to one more
     than the b(m, m+2) - 2 marks the recipe actually has room for; we place
     the left share first and let the right share absorb the surplus. */
  const i64 printed_left = odd ? ceil_div(m + 3, 4) : ceil_div(m + 2, 4);
  const i64 printed_right = odd ? (m + 3) / 4 : (m + 2) / 4;
  i64 marks, nl, nr;
  if (odd) {
    marks = cell.b - 2;
    nl = std::min(printed_left, marks);
    nr = marks - nl;
  } else {
    if (cell.b != 1)
      throw WitnessFailed("witness B expects b(m, m+2) = 1 for even m");
    nl = printed_left;
    nr = printed_right;
    marks = nl + nr;
  }
  const i64 target = binom(m + 5, 3) - 1;
  const std::string kind = odd ? "B-odd" : "B-even";

  return run_witness(kind, m, t, opt, [&](const PrimeField& f, Rng& rng) {
    WitnessConfig cfg;
    ProjPoint p = sample_point(rng, f);
    PlaneP3 h = sample_plane_through(rng, f, p);
    LineP3 lline;
    int budget = kResampleBudget;
    do {
      if (budget-- == 0) throw ResamplingExhausted("mark line L");
      lline = sample_line_in_plane(rng, f, h);
    } while (on_line(f, lline, p));
    LineP3 rline;
    std::optional<ProjPoint> corner;
    budget = kResampleBudget;
    do {
      if (budget-- == 0) throw ResamplingExhausted("mark line R");
      rline = sample_line_in_plane(rng, f, h);
      corner = line_line(f, lline, rline).point;
    } while (on_line(f, rline, p) || !corner);

    std::vector<ProjPoint> taken = {*corner, p};
    std::vector<ProjPoint> lmarks, rmarks;
    for (i64 i = 0; i < nl; ++i) {
      ProjPoint q = sample_point_on_line(rng, f, lline, taken);
      lmarks.push_back(q);
      taken.push_back(q);
    }
    for (i64 i = 0; i < nr; ++i) {
      ProjPoint q = sample_point_on_line(rng, f, rline, taken);
      rmarks.push_back(q);
      taken.push_back(q);
    }

    std::vector<LineP3> ylines;
    std::vector<LineP3> carriers;  /* the line through each mark, in mark order */
    const std::vector<ProjPoint> miss =
        odd ? std::vector<ProjPoint>{*corner} : std::vector<ProjPoint>{};
    for (const auto& q : lmarks) {
      LineP3 cand = line_off_plane_through(rng, f, h, q, p, ylines, miss);
      ylines.push_back(cand);
      carriers.push_back(cand);
    }
    for (const auto& q : rmarks) {
      LineP3 cand = line_off_plane_through(rng, f, h, q, p, ylines, miss);
      ylines.push_back(cand);
      carriers.push_back(cand);
    }
    budget = kResampleBudget * static_cast<int>(cell.a);
    while (static_cast<i64>(ylines.size()) < cell.a) {
      if (budget-- == 0) throw ResamplingExhausted("free witness line");
      LineP3 cand = sample_line(rng, f);
      auto rel = line_plane(f, cand, h);
      if (rel.contained) continue;
      if (on_line(f, lline, *rel.point) || on_line(f, rline, *rel.point))
        continue;
      if (on_line(f, cand, p)) continue;
      if (odd && on_line(f, cand, *corner)) continue;
      if (!skew_to_all(f, cand, ylines)) continue;
      ylines.push_back(cand);
    }

    std::vector<SchemeComponent> comps;
    comps.push_back(FatPoint{p, m});
    for (const auto& l : ylines) comps.push_back(LineComp{l});
    if (odd) {
      for (i64 i = 0; i < marks; ++i) {
        const ProjPoint& s = i < nl ? lmarks[static_cast<std::size_t>(i)]
                                    : rmarks[static_cast<std::size_t>(i - nl)];
        comps.push_back(TangentVector{
            s, general_direction(rng, f, s,
                                 carriers[static_cast<std::size_t>(i)])});
      }
      comps.push_back(SimplePoint{*corner});
    }
    cfg.scheme = UnionScheme::build(f, std::move(comps));
    cfg.splitting = Surface{h};
    cfg.scaffold_lines = {lline, rline};
    cfg.marks = lmarks;
    cfg.marks.insert(cfg.marks.end(), rmarks.begin(), rmarks.end());
    cfg.corner = *corner;
    cfg.lines = cell.a;
    cfg.marked_left = nl;
    cfg.marked_right = nr;
    cfg.tangent_vectors = odd ? marks : 0;
    cfg.mark_surplus =
        odd ? static_cast<int>(printed_left + printed_right - marks) : 0;
    cfg.checks = measure(f, cfg.scheme, t, target, 1, 0);
    return cfg;
  });
}

/* Odd m >= 3: one m-fold point on a plane H, a(m, m+2) lines of which
   b(m, m+2) pass through marked points of a smooth conic in H and m meet H
   away from the conic, plus a tangent vector at every mark.  Total degree
   exactly C(m+5,3), so the expected cohomology in degree m+2 is
   h0 = h1 = 0. */
WitnessConfig build_witness_R(int m, const CertifyOptions& opt) {
  if (m < 3 || m % 2 == 0)
    throw InvalidUnion("witness R needs odd m >= 3");
  const CombinatoricsCell cell = ab(m, m + 2);
  if (cell.a != (3 * static_cast<i64>(m) + 5) / 2 ||
      cell.b != (static_cast<i64>(m) + 5) / 2)
    throw WitnessFailed("witness R ledger cell has unexpected shape");
  const int t = m + 2;
  const i64 target = binom(m + 5, 3);

  return run_witness("R", m, t, opt, [&](const PrimeField& f, Rng& rng) {
    WitnessConfig cfg;
    ProjPoint p = sample_point(rng, f);
    PlaneP3 h = sample_plane_through(rng, f, p);
    ConicInPlane conic = sample_conic_in_plane(rng, f, h, std::span(&p, 1));

    std::vector<ProjPoint> smarks;
    for (i64 i = 0; i < cell.b; ++i)
      smarks.push_back(sample_point_on_conic(rng, f, conic, smarks));

    std::vector<LineP3> ylines;
    std::vector<LineP3> carriers;
    for (const auto& s : smarks) {
      LineP3 cand = line_off_plane_through(rng, f, h, s, p, ylines, {});
      ylines.push_back(cand);
      carriers.push_back(cand);
    }
    int budget = kResampleBudget * static_cast<int>(cell.a);
    while (static_cast<i64>(ylines.size()) < cell.a) {
      if (budget-- == 0) throw ResamplingExhausted("free witness line");
      LineP3 cand = sample_line(rng, f);
      auto rel = line_plane(f, cand, h);
      if (rel.contained) continue;
      if (on_conic(f, conic, *rel.point)) continue;
      if (on_line(f, cand, p)) continue;
      if (!skew_to_all(f, cand, ylines)) continue;
      ylines.push_back(cand);
    }

    std::vector<SchemeComponent> comps;
    comps.push_back(FatPoint{p, m});
    for (const auto& l : ylines) comps.push_back(LineComp{l});
    for (std::size_t i = 0; i < smarks.size(); ++i)
      comps.push_back(TangentVector{
          smarks[i], general_direction(rng, f, smarks[i], carriers[i])});
    cfg.scheme = UnionScheme::build(f, std::move(comps));
    cfg.splitting = Surface{h};
    cfg.marks = smarks;  /* the scaffold is the conic, so no scaffold lines */
    cfg.lines = cell.a;
    cfg.tangent_vectors = cell.b;
    cfg.checks = measure(f, cfg.scheme, t, target, 0, 0);
    return cfg;
  });
}

/* k >= m+3: one m-fold point off a smooth quadric Q, a(m, k) lines each
   meeting Q in two rational points, and a tangent vector at each of
   b(m, k) marks spread two per line (one on the last when b is odd) over
   ceil(b/2) lines of one ruling of Q; the marked union lines pass through
   the marks, the rest meet Q away from the marked ruling lines.  Total
   degree exactly C(k+3,3), so the expected cohomology in degree k is
   h0 = h1 = 0. */
WitnessConfig build_witness_H(int m, int k, const CertifyOptions& opt) {
  if (m < 1) throw InvalidUnion("witness H needs m >= 1");
  if (k < m + 3) throw InvalidUnion("witness H needs k >= m+3");
  const CombinatoricsCell cell = ab(m, k);
  const i64 nrul = (cell.b + 1) / 2;
  const i64 target = binom(k + 3, 3);

  return run_witness("H", m, k, opt, [&](const PrimeField& f, Rng& rng) {
    WitnessConfig cfg;
    ProjPoint p = sample_point(rng, f);
    QuadricP3 q;
    int budget = kResampleBudget;
    do {
      if (budget-- == 0) throw ResamplingExhausted("quadric off the point");
      q = sample_quadric(rng, f);
    } while (on_quadric(f, q, p));

    std::vector<LineP3> rul;
    budget = kResampleBudget;
    while (static_cast<i64>(rul.size()) < nrul) {
      if (budget-- == 0) throw ResamplingExhausted("distinct ruling lines");
      LineP3 cand = sample_ruling_line(rng, f, q, RulingType::FirstFixed);
      bool fresh = true;
      for (const auto& e : rul)
        if (line_line(f, e, cand).kind == LineLineKind::Equal) fresh = false;
      if (!fresh) continue;
      rul.push_back(cand);
    }

    std::vector<ProjPoint> smarks;
    std::vector<std::size_t> mark_rul;
    for (i64 i = 0; i < cell.b; ++i) {
      const std::size_t e = static_cast<std::size_t>(i / 2);
      smarks.push_back(sample_point_on_line(rng, f, rul[e], smarks));
      mark_rul.push_back(e);
    }

    auto off_marked = [&](const ProjPoint& x) {
      return !on_any_line(f, rul, x) &&
             std::find(smarks.begin(), smarks.end(), x) == smarks.end();
    };

    std::vector<LineP3> ylines;
    std::vector<LineP3> carriers;
    for (const auto& s : smarks) {
      budget = kResampleBudget;
      for (;;) {
        if (budget-- == 0)
          throw ResamplingExhausted("marked line through a quadric point");
        ProjPoint second = sample_point_on_quadric(rng, f, q, std::span(&s, 1));
        LineP3 cand = make_line(f, s, second);
        if (line_quadric(f, cand, q).kind != LineQuadricKind::TwoPoints)
          continue;
        if (!off_marked(second)) continue;
        if (on_line(f, cand, p)) continue;
        if (!skew_to_all(f, cand, ylines)) continue;
        ylines.push_back(cand);
        carriers.push_back(cand);
        break;
      }
    }
    budget = kResampleBudget * std::max<int>(1, static_cast<int>(cell.a));
    while (static_cast<i64>(ylines.size()) < cell.a) {
      if (budget-- == 0) throw ResamplingExhausted("free transverse line");
      ProjPoint q1 = sample_point_on_quadric(rng, f, q);
      ProjPoint q2 = sample_point_on_quadric(rng, f, q, std::span(&q1, 1));
      LineP3 cand = make_line(f, q1, q2);
      if (line_quadric(f, cand, q).kind != LineQuadricKind::TwoPoints)
        continue;
      if (!off_marked(q1) || !off_marked(q2)) continue;
      if (on_line(f, cand, p)) continue;
      if (!skew_to_all(f, cand, ylines)) continue;
      ylines.push_back(cand);
    }

    std::vector<SchemeComponent> comps;
    comps.push_back(FatPoint{p, m});
    for (const auto& l : ylines) comps.push_back(LineComp{l});
    for (std::size_t i = 0; i < smarks.size(); ++i)
      comps.push_back(TangentVector{
          smarks[i], general_direction(rng, f, smarks[i], carriers[i])});
    cfg.scheme = UnionScheme::build(f, std::move(comps));
    cfg.splitting = Surface{q};
    cfg.scaffold_lines = rul;
    cfg.marks = smarks;
    cfg.lines = cell.a;
    cfg.tangent_vectors = cell.b;
    cfg.ruling_lines = nrul;
    cfg.checks = measure(f, cfg.scheme, k, target, 0, 0);
    return cfg;
  });
}

}  // namespace postlab
