// Timing harness for the per-atom kernels: runs each workload once with the
// serial reference and once with the OpenMP path and reports both, plus a
// checksum so divergence is visible immediately.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <vector>

#include "stable/basis.hpp"
#include "stable/compactness.hpp"
#include "stable/metrics.hpp"
#include "stable/optimize.hpp"
#include "stable/parallel.hpp"

using namespace stable;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Timed {
  double ms;
  double checksum;
};

template <class F>
Timed timed(F&& f) {
  const double t0 = now_ms();
  const double sum = f();
  return {now_ms() - t0, sum};
}

void report(const char* name, const Timed& serial, const Timed& parallel) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
              name, serial.ms, parallel.ms,
              parallel.ms > 0 ? serial.ms / parallel.ms : 0.0,
              serial.checksum == parallel.checksum ? "match" : "MISMATCH");
}

double basis_workload(const std::vector<L0Vector>& gens, Exec exec) {
  StableBasis b = extract_stable_basis(gens, exec);
  double sum = 0;
  for (std::int64_t r : b.ranks()) sum += static_cast<double>(r);
  return sum;
}

double argmin_workload(const StableFunction& f, const StableSet& k, Exec exec) {
  ArgminResult r = conditional_argmin(f, k, exec);
  double sum = 0;
  for (std::size_t a = 0; a < k.atoms(); ++a) sum += r.value[a];
  return sum;
}

double net_workload(const StableSet& k, const StableMetric& d,
                    const L0Scalar& radius, Exec exec) {
  EpsNet net = stable_eps_net(k, d, radius, exec);
  double sum = 0;
  for (std::int64_t c : net.centers.counts()) sum += static_cast<double>(c);
  return sum;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t atoms = 1u << 17;
  if (argc > 1) atoms = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));
  const std::size_t dim = 4;
  MeasureAlgebra alg = MeasureAlgebra::uniform(atoms);
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::printf("atoms=%zu dim=%zu threads=%d\n", atoms, dim, effective_threads());

  // stable basis over 6 generators; ranks vary per atom because some rows are
  // zeroed at random
  std::vector<L0Vector> gens;
  std::bernoulli_distribution drop(0.3);
  for (int g = 0; g < 6; ++g) {
    std::vector<double> flat(atoms * dim);
    for (std::size_t a = 0; a < atoms; ++a) {
      const bool zero = drop(rng);
      for (std::size_t j = 0; j < dim; ++j)
        flat[a * dim + j] = zero ? 0.0 : gauss(rng);
    }
    gens.emplace_back(alg, dim, std::move(flat));
  }
  report("extract_stable_basis",
         timed([&] { return basis_workload(gens, Exec::serial); }),
         timed([&] { return basis_workload(gens, Exec::parallel); }));

  // argmin over 32 points per atom
  const std::size_t pts = 32;
  std::vector<AtomRep> reps(atoms);
  for (std::size_t a = 0; a < atoms; ++a) {
    reps[a].flat.resize(pts * dim);
    for (double& v : reps[a].flat) v = gauss(rng);
  }
  StableSet cloud(alg, dim, std::move(reps));
  StableFunction f = StableFunction::builtin(alg, dim, "norm2sq", {});
  report("conditional_argmin",
         timed([&] { return argmin_workload(f, cloud, Exec::serial); }),
         timed([&] { return argmin_workload(f, cloud, Exec::parallel); }));

  // greedy net over the same cloud
  StableMetric d = StableMetric::euclidean(alg, dim);
  L0Scalar radius = L0Scalar::constant(alg, 1.5);
  report("stable_eps_net",
         timed([&] { return net_workload(cloud, d, radius, Exec::serial); }),
         timed([&] { return net_workload(cloud, d, radius, Exec::parallel); }));
  return 0;
}
