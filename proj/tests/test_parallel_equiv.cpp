// The OpenMP paths must be bit-identical to the serial reference: every
// kernel partitions work by index and writes disjoint slots.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "stable/basis.hpp"
#include "stable/compactness.hpp"
#include "stable/optimize.hpp"
#include "stable/parallel.hpp"

using namespace stable;

namespace {

// large enough to clear the parallel-dispatch threshold
const MeasureAlgebra alg = MeasureAlgebra::uniform(257);

std::vector<L0Vector> random_generators(std::mt19937_64& rng, std::size_t d,
                                        int count) {
  std::normal_distribution<double> gauss;
  std::bernoulli_distribution drop(0.25);
  std::vector<L0Vector> gens;
  for (int g = 0; g < count; ++g) {
    std::vector<double> flat(alg.atoms() * d);
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      const bool zero = drop(rng);
      for (std::size_t j = 0; j < d; ++j)
        flat[a * d + j] = zero ? 0.0 : gauss(rng);
    }
    gens.emplace_back(alg, d, std::move(flat));
  }
  return gens;
}

}  // namespace

TEST_CASE("thread configuration: flag wins, then the environment") {
  set_configured_threads(3);
  CHECK(configured_threads() == 3);
  CHECK(effective_threads() == 3);
  set_configured_threads(0);
  CHECK(configured_threads() == 0);
  setenv("STABLE_THREADS", "2", 1);
  CHECK(effective_threads() == 2);
  unsetenv("STABLE_THREADS");
  CHECK(effective_threads() >= 1);
  set_configured_threads(-5);  // nonsense resets to auto
  CHECK(configured_threads() == 0);
}

TEST_CASE("for_each_index covers every index exactly once") {
  for (std::size_t n : {0u, 1u, 63u, 64u, 1000u}) {
    std::vector<int> hits(n, 0);
    for_each_index(Exec::parallel, n, [&](std::size_t i) { hits[i] += 1; });
    for (std::size_t i = 0; i < n; ++i) CHECK(hits[i] == 1);
  }
}

TEST_CASE("stable basis extraction is exec-independent") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    auto gens = random_generators(rng, 3, 5);
    StableBasis ser = extract_stable_basis(gens, Exec::serial);
    StableBasis par = extract_stable_basis(gens, Exec::parallel);
    CHECK(ser.ranks() == par.ranks());
    REQUIRE(ser.vectors().block_count() == par.vectors().block_count());
    for (std::size_t k = 0; k < ser.vectors().block_count(); ++k) {
      CHECK(ser.vectors().block(k) == par.vectors().block(k));
      REQUIRE(ser.vectors().items(k).size() == par.vectors().items(k).size());
      for (std::size_t m = 0; m < ser.vectors().items(k).size(); ++m)
        CHECK(ser.vectors().items(k)[m] == par.vectors().items(k)[m]);
    }
  }
}

TEST_CASE("argmin is exec-independent") {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> gauss;
  std::vector<AtomRep> reps(alg.atoms());
  for (auto& r : reps) {
    r.flat.resize((1 + rng() % 7) * 2);
    for (double& v : r.flat) v = gauss(rng);
  }
  StableSet k(alg, 2, std::move(reps));
  StableFunction f = StableFunction::builtin(alg, 2, "quad_diag",
                                             {1.0, 2.0, -0.3, 0.7, 0.1});
  ArgminResult ser = conditional_argmin(f, k, Exec::serial);
  ArgminResult par = conditional_argmin(f, k, Exec::parallel);
  CHECK(ser.x0 == par.x0);
  CHECK(ser.value == par.value);
}

TEST_CASE("eps nets are exec-independent") {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> gauss;
  std::vector<AtomRep> reps(alg.atoms());
  for (auto& r : reps) {
    r.flat.resize((1 + rng() % 24) * 2);
    for (double& v : r.flat) v = gauss(rng);
  }
  StableSet k(alg, 2, std::move(reps));
  StableMetric d = StableMetric::euclidean(alg, 2);
  L0Scalar radius = L0Scalar::constant(alg, 0.8);
  EpsNet ser = stable_eps_net(k, d, radius, Exec::serial);
  EpsNet par = stable_eps_net(k, d, radius, Exec::parallel);
  CHECK(ser.center_indices == par.center_indices);
  CHECK(ser.centers.counts() == par.centers.counts());
}
