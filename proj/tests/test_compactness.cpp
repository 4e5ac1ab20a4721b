#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stable/compactness.hpp"
#include "stable/errors.hpp"

using namespace stable;

namespace {

const MeasureAlgebra alg = MeasureAlgebra::uniform(3);

StableSet pts(std::vector<std::vector<double>> per_atom, std::size_t dim) {
  std::vector<AtomRep> reps(per_atom.size());
  for (std::size_t a = 0; a < per_atom.size(); ++a)
    reps[a].flat = std::move(per_atom[a]);
  return StableSet(alg, dim, std::move(reps));
}

}  // namespace

TEST_CASE("compactness verdicts carry certificates or defects") {
  StableSet k = pts({{3.0, -4.0}, {0.5}, {1.0, 2.0}}, 1);
  CompactnessReport rep = is_stably_compact(k);
  CHECK(rep.compact);
  REQUIRE(rep.radius.has_value());
  CHECK((*rep.radius)[0] == 4.0);
  CHECK((*rep.radius)[2] == 2.0);

  std::vector<AtomRep> reps(3);
  reps[0].flat = {1.0};
  reps[2].flat = {2.0};
  CompactnessReport bad = is_stably_compact(StableSet::unchecked(alg, 1, std::move(reps)));
  CHECK(!bad.compact);
  CHECK(bad.bad_atom == 1);

  std::vector<AtomRep> nan_reps(3);
  nan_reps[0].flat = {1.0};
  nan_reps[1].flat = {std::nan("")};
  nan_reps[2].flat = {2.0};
  CompactnessReport nan_rep =
      is_stably_compact(StableSet::unchecked(alg, 1, std::move(nan_reps)));
  CHECK(!nan_rep.compact);
  CHECK(nan_rep.bad_atom == 1);

  // verdict is topology-independent; the family overload only checks shapes
  SeminormFamily F({Seminorm::weighted(alg, 1, {1.0}, 2.0)}, true);
  CHECK(is_stably_compact(k, F).compact);
  SeminormFamily wrong_dim({Seminorm::weighted(alg, 2, {1.0, 1.0}, 2.0)}, true);
  CHECK_THROWS_AS(is_stably_compact(k, wrong_dim), StableError);
}

TEST_CASE("greedy nets cover and reuse input points as centers") {
  StableSet k = pts({{0.0, 0.1, 5.0, 5.1}, {0.0, 0.05}, {7.0}}, 1);
  StableMetric d = StableMetric::euclidean(alg, 1);
  EpsNet net = stable_eps_net(k, d, L0Scalar::constant(alg, 0.5));

  CHECK(net.centers.counts() == std::vector<std::int64_t>{2, 1, 1});
  CHECK(net.center_indices[0] == std::vector<std::size_t>{0, 2});
  CHECK(net.center_indices[1] == std::vector<std::size_t>{0});

  // exhaustive cover audit
  for (std::size_t a = 0; a < k.atoms(); ++a)
    for (std::size_t i = 0; i < k.count(a); ++i) {
      double best = 1e300;
      for (std::size_t c : net.center_indices[a])
        best = std::min(best, std::fabs(k.point(a, i)[0] - k.point(a, c)[0]));
      CHECK(best <= 0.5);
    }

  CHECK_THROWS_AS(stable_eps_net(k, d, L0Scalar::constant(alg, 0.0)), StableError);
  Partition parts(alg, {Event(alg, {0, 1, 2})});
  StableMetric nonlocal = StableMetric::seminorm_induced(
      Seminorm::conditional_lp(alg, 1, parts, 2.0));
  CHECK_THROWS_AS(stable_eps_net(k, nonlocal, L0Scalar::constant(alg, 0.5)),
                  StableError);
}

TEST_CASE("mass-halving chain construction and its failure report") {
  // dyadic algebra, every r_n positive everywhere
  MeasureAlgebra dy = MeasureAlgebra::uniform(16);
  std::vector<L0Scalar> rs(3, L0Scalar::one(dy));
  ClusterCertificate cert = cluster_lemma_construct(rs);
  REQUIRE(cert.bs.size() == 3);
  REQUIRE(cert.cs.size() == 3);
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK(cert.cs[n].count() > 0);
    CHECK(cert.cs[n].leq(cert.bs[n]));
    for (std::size_t m = n + 1; m < 3; ++m)
      CHECK(cert.cs[n].disjoint_from(cert.cs[m]));
    // r certifies P(r_n >= r) > 0
    bool witnessed = false;
    for (std::size_t a = 0; a < dy.atoms(); ++a)
      witnessed = witnessed || (cert.cs[n].contains(a) && 1.0 >= cert.r[a]);
    CHECK(witnessed);
  }
  // strict halving of the chain masses
  CHECK(cert.bs[0].prob() == doctest::Approx(1.0));
  CHECK(cert.bs[1].prob() < 0.5 * cert.bs[0].prob());
  CHECK(cert.bs[2].prob() < 0.5 * cert.bs[1].prob());
  // r is strictly positive everywhere
  for (std::size_t a = 0; a < dy.atoms(); ++a) CHECK(cert.r[a] > 0.0);

  // four uniform atoms cannot sustain a chain of four halvings
  MeasureAlgebra small = MeasureAlgebra::uniform(4);
  std::vector<L0Scalar> rs4(4, L0Scalar::one(small));
  try {
    cluster_lemma_construct(rs4);
    FAIL("expected ConstructionImpossible");
  } catch (const ConstructionImpossibleError& e) {
    CHECK(e.achievable_prefix() == 2);
  }
}

TEST_CASE("supports restrict the chain") {
  MeasureAlgebra dy = MeasureAlgebra::uniform(8);
  // r_2 lives on a thin event: the second link must fit inside it
  L0Scalar r1 = L0Scalar::one(dy);
  L0Scalar r2 = L0Scalar::indicator(Event(dy, {5}));
  ClusterCertificate cert =
      cluster_lemma_construct(std::vector<L0Scalar>{r1, r2});
  CHECK(cert.bs[1] == Event(dy, {5}));
  CHECK(cert.cs[1] == Event(dy, {5}));
  CHECK(!cert.cs[0].contains(5));
}

TEST_CASE("products multiply counts and add dimensions") {
  StableSet a = pts({{0.0, 1.0}, {2.0}, {3.0, 4.0}}, 1);
  StableSet b = pts({{5.0}, {6.0, 7.0}, {8.0}}, 1);
  StableSet prod = product_sets(std::vector<StableSet>{a, b});
  CHECK(prod.dim() == 2);
  CHECK(prod.count(0) == 2);
  CHECK(prod.count(1) == 2);
  // odometer order: last factor fastest
  CHECK(prod.point(0, 0)[0] == 0.0);
  CHECK(prod.point(0, 0)[1] == 5.0);
  CHECK(prod.point(0, 1)[0] == 1.0);
  CHECK(prod.point(1, 1)[1] == 7.0);

  std::vector<StableSet> many(9, a);
  StableSet big = product_sets(many);  // 2^9 points at atoms 0 and 2
  CHECK(big.count(0) == 512);
  CHECK_THROWS_AS(product_sets(std::vector<StableSet>(17, a)), StableError);
  CHECK_THROWS_AS(product_sets(many, 16, 256), StableError);
}

TEST_CASE("eventually periodic index paths yield constant subsequences") {
  StableSet k = pts({{10.0, 11.0, 12.0}, {20.0, 21.0}, {30.0}}, 1);
  // atom 0: 0,1,2,0,1,2,...; atom 1: burn-in then fixed; atom 2: constant
  auto seq = [](std::size_t atom, std::int64_t n) -> std::int64_t {
    if (atom == 0) return n % 3;
    if (atom == 1) return n < 4 ? static_cast<std::int64_t>(n % 2) : 1;
    return 0;
  };
  ConstantSubsequence sub = extract_constant_subsequence(k, seq, 64);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(sub.stride[a] >= 1);
    const std::int64_t i0 = seq(a, sub.start[a]);
    for (int t = 1; t < 5; ++t)
      CHECK(seq(a, sub.start[a] + t * sub.stride[a]) == i0);
    CHECK(sub.point.coord(a, 0) == k.point(a, static_cast<std::size_t>(i0))[0]);
  }
  // smallest stride wins: the 3-cycle needs stride 3, the others stride 1
  CHECK(sub.stride[0] == 3);
  CHECK(sub.stride[1] == 1);
  CHECK(sub.stride[2] == 1);

  // atom 0 alternates 0,1 but ends on a value seen nowhere else, so no
  // period can survive the final comparison of the probe window
  auto wild = [](std::size_t atom, std::int64_t n) -> std::int64_t {
    if (atom != 0) return 0;
    return n == 15 ? 2 : n % 2;
  };
  CHECK_THROWS_AS(extract_constant_subsequence(k, wild, 16), StableError);
}
