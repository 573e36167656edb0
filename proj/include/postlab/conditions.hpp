#ifndef POSTLAB_CONDITIONS_HPP
#define POSTLAB_CONDITIONS_HPP

#include <cstddef>
#include <vector>

#include "postlab/exactlin.hpp"
#include "postlab/schemecalc.hpp"

namespace postlab {

/* Provenance of one matrix row. */
enum class RowKind { FatJet, LineSample, CurveSample, Evaluation, Derivative };
struct RowInfo {
  std::size_t component;  // index into the union's components / trace items
  RowKind kind;
  int index;  // jet number or sample parameter, 0 for point rows
};

struct ConditionMatrix {
  FMatrix matrix;
  std::vector<RowInfo> rows;
};

/* Condition matrix of a union on the degree-t forms of P^3.  One row per
   degree unit, columns indexed by monomials.  Throws FieldTooSmall when the
   field cannot supply t+1 distinct sample parameters. */
ConditionMatrix build_p3(const PrimeField& f, const UnionScheme& x, int t);

/* Condition matrix of a trace on the degree-t forms of its plane. */
ConditionMatrix build_plane(const PrimeField& f, const TraceScheme& tr, int t);

/* Condition matrix of a trace on the bidegree-(a,b) forms of its quadric. */
ConditionMatrix build_quadric(const PrimeField& f, const TraceScheme& tr,
                              int a, int b);

struct Cohomology {
  i64 h0 = 0, h1 = 0;
  i64 rank = 0;
  i64 n_forms = 0;
  i64 degree = 0;
};

/* h^0 and h^1 of the twisted ideal sheaf of one instance, from the rank of
   its condition matrix.  Checks row count == degree. */
Cohomology instance_cohomology(const PrimeField& f, const UnionScheme& x,
                               int t);

/* Same for a trace: degree-t forms on a plane, bidegree (t,t) on a
   quadric. */
Cohomology trace_cohomology(const PrimeField& f, const TraceScheme& tr, int t);

}  // namespace postlab

#endif
