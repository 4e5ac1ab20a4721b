#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "stable/errors.hpp"
#include "stable/metrics.hpp"

using namespace stable;

namespace {

const MeasureAlgebra alg = MeasureAlgebra::uniform(3);
const double inf = std::numeric_limits<double>::infinity();

StableSet grid1d(std::vector<std::vector<double>> pts) {
  std::vector<AtomRep> reps(pts.size());
  for (std::size_t a = 0; a < pts.size(); ++a) reps[a].flat = std::move(pts[a]);
  return StableSet(alg, 1, std::move(reps));
}

}  // namespace

TEST_CASE("tables bind values to grid points") {
  StableSet g = grid1d({{0, 1, 2}, {0, 1}, {5}});
  FunctionTable f(g, {{0.0, 1.0, 4.0}, {0.0, 1.0}, {25.0}});
  CHECK(f.value(0, 2) == 4.0);
  CHECK(f.value(2, 0) == 25.0);
  CHECK(f.all_finite());

  // shape mismatch
  CHECK_THROWS_AS(FunctionTable(g, {{0.0}, {0.0, 1.0}, {25.0}}), StableError);
  // infinity needs opting in
  CHECK_THROWS_AS(FunctionTable(g, {{0.0, inf, 4.0}, {0.0, 1.0}, {25.0}}),
                  StableError);
  FunctionTable finf(g, {{0.0, inf, 4.0}, {0.0, 1.0}, {25.0}}, true);
  CHECK(!finf.all_finite());

  FunctionTable sq = FunctionTable::tabulate(
      g, [](std::size_t, std::span<const double> p) { return p[0] * p[0]; });
  CHECK(sq.value(0, 2) == 4.0);
  CHECK(sq.value(2, 0) == 25.0);
  CHECK(sq.same_grid(f));

  // vector form pads short atoms with their last value
  L0Vector v = sq.to_vector();
  CHECK(v.dim() == 3);
  CHECK(v.coord(1, 0) == 0.0);
  CHECK(v.coord(1, 1) == 1.0);
  CHECK(v.coord(1, 2) == 1.0);
  CHECK(v.coord(2, 2) == 25.0);
}

TEST_CASE("sup distance on a grid is exact") {
  StableSet g = grid1d({{0, 1}, {0, 1}, {0, 1}});
  FunctionTable f(g, {{1.0, 2.0}, {0.0, 0.0}, {3.0, 3.0}});
  FunctionTable h(g, {{1.0, 2.5}, {0.0, 0.0}, {2.0, 9.0}});
  L0Scalar d = d_infinity(f, h);
  CHECK(d[0] == 0.5);
  CHECK(d[1] == 0.0);
  CHECK(d[2] == 6.0);

  StableSet g2 = grid1d({{0, 1}, {0, 1}, {0, 2}});
  FunctionTable other(g2, {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
  CHECK_THROWS_AS(d_infinity(f, other), StableError);
}

TEST_CASE("metric kinds evaluate as declared") {
  StableMetric eu = StableMetric::euclidean(alg, 2);
  L0Vector x(alg, 2, {0, 0, 1, 1, 2, 2});
  L0Vector y(alg, 2, {3, 4, 1, 1, 2, 0});
  CHECK(eu(x, y)[0] == doctest::Approx(5.0));
  CHECK(eu(x, y)[1] == 0.0);
  CHECK(eu(x, y)[2] == doctest::Approx(2.0));
  CHECK(eu.per_atom_local());

  StableMetric sm = StableMetric::seminorm_induced(
      Seminorm::weighted(alg, 2, {2.0, 1.0}, 1.0));
  CHECK(sm(x, y)[0] == doctest::Approx(10.0));
  CHECK(sm.per_atom_local());

  Partition parts(alg, {Event(alg, {0, 1, 2})});
  StableMetric cond = StableMetric::seminorm_induced(
      Seminorm::conditional_lp(alg, 2, parts, 2.0));
  CHECK(!cond.per_atom_local());

  StableSet g = grid1d({{0, 1, 2}, {0, 1}, {5}});
  StableMetric di = StableMetric::d_infinity_on(g);
  CHECK(di.dim() == 3);
  // coordinates beyond an atom's grid count are ignored padding
  L0Vector f1(alg, 3, {1, 2, 3, 4, 5, 99, 7, 0, 0});
  L0Vector f2(alg, 3, {1, 2, 2, 4, 6, -99, 9, 0, 0});
  L0Scalar d = di(f1, f2);
  CHECK(d[0] == 1.0);
  CHECK(d[1] == 1.0);  // the 99 vs -99 slot is padding for a 2-point atom
  CHECK(d[2] == 2.0);
}

TEST_CASE("metric axioms hold on random triples") {
  StableSet g = grid1d({{0, 1, 2}, {0, 1}, {5}});
  CHECK_NOTHROW(spot_check_metric(StableMetric::euclidean(alg, 2), 300, 7));
  CHECK_NOTHROW(spot_check_metric(
      StableMetric::seminorm_induced(Seminorm::weighted(alg, 2, {1.0, 3.0}, inf)),
      300, 7));
  CHECK_NOTHROW(spot_check_metric(StableMetric::d_infinity_on(g), 300, 7));
}

TEST_CASE("equicontinuity scans all close grid pairs") {
  StableSet g = grid1d({{0.0, 0.1, 0.2, 1.0}, {0.0, 0.1}, {0.0}});
  // Lipschitz-1 tables
  std::vector<FunctionTable> flat{
      FunctionTable::tabulate(g, [](std::size_t, std::span<const double> p) {
        return 0.5 * p[0];
      }),
      FunctionTable::tabulate(g, [](std::size_t, std::span<const double> p) {
        return -p[0] + 1.0;
      })};
  CHECK(is_stably_equicontinuous(flat, L0Scalar::constant(alg, 0.11), 0.1));
  // a jump inside the modulus window breaks it at atom 0 only
  std::vector<FunctionTable> jump{
      FunctionTable::tabulate(g, [](std::size_t, std::span<const double> p) {
        return p[0] < 0.05 ? 0.0 : 1.0;
      })};
  CHECK(!is_stably_equicontinuous(jump, L0Scalar::constant(alg, 0.11), 0.1));
  // but a per-atom bound that only has to hold where the jump is absent works
  CHECK(is_stably_equicontinuous(jump, L0Scalar(alg, {1.01, 1.01, 0.01}), 0.1));

  CHECK_THROWS_AS(is_stably_equicontinuous(flat, L0Scalar::constant(alg, 1.0), 0.0),
                  StableError);
}
