// Acceptance gate. Runs eleven independent checks, prints exactly one
// PASS/FAIL line each, and exits nonzero if any fail or overrun their time
// budget. All tolerances are pinned here, next to the check that uses them.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stable/algebra.hpp"
#include "stable/basis.hpp"
#include "stable/compactness.hpp"
#include "stable/convex.hpp"
#include "stable/errors.hpp"
#include "stable/l0.hpp"
#include "stable/metrics.hpp"
#include "stable/optimize.hpp"
#include "stable/seminorms.hpp"
#include "stable/sets.hpp"
#include "stable/vectors.hpp"

using namespace stable;

namespace {

constexpr double kFixpointTol = 1e-8;        // |z - closed form|, per coordinate
constexpr double kTwoStartTol = 2e-9;        // fixpoints from different starts
constexpr double kHausdorffTol = 1e-9;       // bipolar vs hull oracle
constexpr double kRoundTripTol = 1e-9;       // basis coordinate round trip
constexpr double kRestrictRelTol = 1e-10;    // extension vs f on the submodule
constexpr double kDominationRelSlack = 1e-9; // sampled f_hat <= p audit

struct Fail {
  std::string msg;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Fail{msg};
}

int g_failures = 0;

void run_criterion(int idx, double budget_s,
                   const std::function<std::string()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    detail = body();
  } catch (const Fail& f) {
    ok = false;
    detail = f.msg;
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("unexpected exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (ok && secs > budget_s) {
    ok = false;
    detail += " -- exceeded time budget";
  }
  std::printf("%s criterion-%d: %s [%.2fs, budget %.0fs]\n",
              ok ? "PASS" : "FAIL", idx, detail.c_str(), secs, budget_s);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

MeasureAlgebra random_algebra(std::mt19937_64& rng, std::size_t atoms) {
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> w(atoms);
  double sum = 0.0;
  for (double& x : w) sum += (x = u(rng));
  for (double& x : w) x /= sum;
  return MeasureAlgebra(std::move(w));
}

double unif(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double gauss(std::mt19937_64& rng) {
  return std::normal_distribution<double>()(rng);
}

// ---------------------------------------------------------------------------
// 1. Exhaustive factorization/selection on a 2-atom, 1-d, 3-value grid.

std::string criterion1() {
  MeasureAlgebra alg({0.5, 0.5});
  const double vals[3] = {-1.0, 0.0, 1.0};
  std::vector<L0Vector> grid;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      grid.push_back(L0Vector(alg, 1, {vals[i], vals[j]}));

  int stable_count = 0;
  for (unsigned mask = 1; mask < 512; ++mask) {
    std::vector<L0Vector> s;
    for (int b = 0; b < 9; ++b)
      if (mask >> b & 1u) s.push_back(grid[b]);

    std::set<double> p0, p1;
    std::set<std::pair<double, double>> pairs;
    for (const L0Vector& x : s) {
      p0.insert(x.coord(0, 0));
      p1.insert(x.coord(1, 0));
      pairs.insert({x.coord(0, 0), x.coord(1, 0)});
    }
    const bool product = pairs.size() == p0.size() * p1.size();
    require(is_stable(s) == product,
            "is_stable disagrees with the product oracle at mask " +
                std::to_string(mask));

    if (product) {
      ++stable_count;
      StableSet k = extract_setvalued_map(s);
      std::vector<L0Vector> sels = k.selector_list();
      require(sels.size() == s.size(),
              "selector count differs from subset size at mask " +
                  std::to_string(mask));
      std::set<std::pair<double, double>> rt;
      for (const L0Vector& x : sels) rt.insert({x.coord(0, 0), x.coord(1, 0)});
      require(rt == pairs,
              "selector round trip altered the set at mask " +
                  std::to_string(mask));
    } else {
      bool rejected = false;
      try {
        extract_setvalued_map(s);
      } catch (const StableError& e) {
        rejected = e.kind() == ErrorKind::NotStable;
      }
      require(rejected, "a non-stable subset slipped through extraction at mask " +
                            std::to_string(mask));
    }
  }
  require(stable_count == 49, "expected 49 product subsets, found " +
                                  std::to_string(stable_count));
  return "511 subsets audited, 49 stable, selector round trips exact";
}

// ---------------------------------------------------------------------------
// 2. Argmin vs exhaustive selector enumeration, bitwise values.

StableFunction random_builtin(std::mt19937_64& rng, const MeasureAlgebra& alg,
                              std::size_t dim) {
  const auto& names = StableFunction::builtin_names();
  const std::string name = names[rng() % names.size()];
  std::vector<double> params;
  if (name == "affine") {
    for (std::size_t j = 0; j <= dim; ++j) params.push_back(unif(rng, -2, 2));
  } else if (name == "quad_diag") {
    for (std::size_t j = 0; j < dim; ++j) params.push_back(unif(rng, 0.1, 2));
    for (std::size_t j = 0; j < dim; ++j) params.push_back(unif(rng, -2, 2));
    params.push_back(unif(rng, -1, 1));
  } else if (name == "dist2sq") {
    for (std::size_t j = 0; j < dim; ++j) params.push_back(unif(rng, -2, 2));
  }
  return StableFunction::builtin(alg, dim, name, params);
}

std::string criterion2() {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 200; ++t) {
    const std::size_t atoms = 1 + rng() % 4;
    const std::size_t dim = 1 + rng() % 3;
    MeasureAlgebra alg = random_algebra(rng, atoms);
    std::vector<AtomRep> reps(atoms);
    for (AtomRep& r : reps) {
      const std::size_t n = 1 + rng() % 5;
      r.kind = RepKind::Points;
      for (std::size_t i = 0; i < n * dim; ++i)
        r.flat.push_back(unif(rng, -3, 3));
    }
    StableSet k(alg, dim, std::move(reps));
    StableFunction f = random_builtin(rng, alg, dim);

    ArgminResult res = conditional_argmin(f, k);

    std::vector<double> best(atoms, std::numeric_limits<double>::infinity());
    k.for_each_selector([&](const L0Vector& x) {
      L0Scalar v = f(x);
      for (std::size_t a = 0; a < atoms; ++a)
        if (v[a] < best[a]) best[a] = v[a];
    });
    for (std::size_t a = 0; a < atoms; ++a)
      require(res.value[a] == best[a],
              "argmin value is not bitwise equal to the brute-force minimum "
              "(case " + std::to_string(t) + ", atom " + std::to_string(a) + ")");
    require(set_contains(k, res.x0, 0.0),
            "minimizer left the feasible set (case " + std::to_string(t) + ")");
    L0Scalar direct = f(res.x0);
    for (std::size_t a = 0; a < atoms; ++a)
      require(direct[a] == res.value[a],
              "reported value differs from f at the minimizer (case " +
                  std::to_string(t) + ")");
  }
  return "200 random scenarios, values bitwise equal to selector brute force";
}

// ---------------------------------------------------------------------------
// 3. Banach fixpoint: closed form, per-step iterate bound, start independence.

StableSet constant_box(const MeasureAlgebra& alg, std::size_t dim, double m) {
  AtomRep rep;
  rep.kind = RepKind::Polytope;
  const std::size_t corners = std::size_t{1} << dim;
  for (std::size_t c = 0; c < corners; ++c)
    for (std::size_t j = 0; j < dim; ++j)
      rep.flat.push_back((c >> j & 1u) ? m : -m);
  return StableSet(alg, dim, std::vector<AtomRep>(alg.atoms(), rep));
}

std::string criterion3() {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 100; ++t) {
    const std::size_t atoms = 1 + rng() % 5;
    const std::size_t dim = 1 + rng() % 3;
    MeasureAlgebra alg = random_algebra(rng, atoms);

    std::vector<double> av(atoms);
    for (double& a : av) {
      const double mag = unif(rng, 0.05, 0.95);
      a = (rng() & 1u) ? mag : -mag;
    }
    L0Scalar a(alg, av);
    L0Scalar rate = a.abs();

    std::vector<double> bflat(atoms * dim);
    for (double& x : bflat) x = unif(rng, -5, 5);
    L0Vector b(alg, dim, bflat);

    L0Vector zstar = L0Vector::zero(alg, dim);
    double extent = 1.0;
    for (std::size_t at = 0; at < atoms; ++at)
      for (std::size_t j = 0; j < dim; ++j) {
        zstar.coord(at, j) = b.coord(at, j) / (1.0 - av[at]);
        extent = std::max({extent, std::fabs(zstar.coord(at, j)),
                           std::fabs(b.coord(at, j))});
      }
    const double m = 25.0 * extent;
    StableSet domain = constant_box(alg, dim, m);

    const double tol = 1e-10;
    ContractionSpec spec{
        .map = [a, b](const L0Vector& x) { return x.scaled(a) + b; },
        .rate = rate,
        .domain = domain,
        .tol = L0Scalar::constant(alg, tol)};

    auto random_start = [&] {
      std::vector<double> flat(atoms * dim);
      for (double& x : flat) x = unif(rng, -m / 4, m / 4);
      return L0Vector(alg, dim, std::move(flat));
    };

    FixpointResult r1 = banach_fixpoint(spec, random_start(), true);
    for (std::size_t at = 0; at < atoms; ++at)
      for (std::size_t j = 0; j < dim; ++j)
        require(std::fabs(r1.z.coord(at, j) - zstar.coord(at, j)) <= kFixpointTol,
                "fixpoint misses the closed form (case " + std::to_string(t) + ")");

    // A priori bound for every recorded iterate, against the glued stop
    // point z (within tol of the true limit).
    L0Scalar d01 = (r1.trace[0] - r1.trace[1]).norm2();
    for (std::size_t n = 0; n < r1.trace.size(); ++n) {
      L0Scalar dn = (r1.trace[n] - r1.z).norm2();
      for (std::size_t at = 0; at < atoms; ++at) {
        const double bound = std::pow(rate[at], static_cast<double>(n)) /
                                 (1.0 - rate[at]) * d01[at] +
                             tol + 1e-12 * (1.0 + d01[at]);
        require(dn[at] <= bound,
                "iterate bound violated at step " + std::to_string(n) +
                    " (case " + std::to_string(t) + ")");
      }
    }

    FixpointResult r2 = banach_fixpoint(spec, random_start(), false);
    L0Scalar gap = (r1.z - r2.z).norm_inf();
    for (std::size_t at = 0; at < atoms; ++at)
      require(gap[at] <= kTwoStartTol,
              "fixpoints from two starts disagree (case " + std::to_string(t) + ")");
  }
  return "100 affine contractions: closed form, iterate bounds, and paired "
         "starts all hold";
}

// ---------------------------------------------------------------------------
// 4. Strong separation certificates and overlap detection.

std::vector<double> random_triangle(std::mt19937_64& rng, double cx, double cy,
                                    double radius) {
  std::vector<double> flat;
  const double base = unif(rng, 0, 2 * M_PI);
  for (int v = 0; v < 3; ++v) {
    const double ang = base + v * 2.0 * M_PI / 3.0 + unif(rng, -0.4, 0.4);
    flat.push_back(cx + radius * std::cos(ang));
    flat.push_back(cy + radius * std::sin(ang));
  }
  return flat;
}

std::string criterion4() {
  std::mt19937_64 rng(404);

  for (int t = 0; t < 100; ++t) {
    const std::size_t atoms = 1 + rng() % 4;
    MeasureAlgebra alg = random_algebra(rng, atoms);
    std::vector<AtomRep> ra(atoms), rb(atoms);
    for (std::size_t at = 0; at < atoms; ++at) {
      const double cx = unif(rng, -2, 2), cy = unif(rng, -2, 2);
      const double ang = unif(rng, 0, 2 * M_PI);
      ra[at] = {RepKind::Polytope, random_triangle(rng, cx, cy, unif(rng, 0.6, 1.2))};
      rb[at] = {RepKind::Polytope,
                random_triangle(rng, cx + 8 * std::cos(ang), cy + 8 * std::sin(ang),
                                unif(rng, 0.6, 1.2))};
    }
    StableSet s1(alg, 2, std::move(ra)), s2(alg, 2, std::move(rb));
    SeparationCertificate cert = strong_separation(s1, s2);
    for (std::size_t at = 0; at < atoms; ++at) {
      const double y0 = cert.functional.entry(at, 0, 0);
      const double y1 = cert.functional.entry(at, 0, 1);
      require(std::fabs(std::hypot(y0, y1) - 1.0) <= 1e-9,
              "separating functional is not unit length");
      double min_gap = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < s1.count(at); ++i)
        for (std::size_t j = 0; j < s2.count(at); ++j) {
          auto pa = s1.point(at, i);
          auto pb = s2.point(at, j);
          min_gap = std::min(min_gap, y0 * (pb[0] - pa[0]) + y1 * (pb[1] - pa[1]));
        }
      require(cert.gap[at] > 0.0, "certificate gap is not positive");
      require(min_gap > cert.gap[at],
              "vertex support gap does not exceed the certified radius "
              "(case " + std::to_string(t) + ", atom " + std::to_string(at) + ")");
    }
  }

  for (int t = 0; t < 100; ++t) {
    const std::size_t atoms = 1 + rng() % 4;
    MeasureAlgebra alg = random_algebra(rng, atoms);
    const unsigned overlap_mask =
        1u + static_cast<unsigned>(rng() % ((1u << atoms) - 1u));
    std::vector<std::size_t> expected;
    std::vector<AtomRep> ra(atoms), rb(atoms);
    for (std::size_t at = 0; at < atoms; ++at) {
      const double cx = unif(rng, -2, 2), cy = unif(rng, -2, 2);
      ra[at] = {RepKind::Polytope, random_triangle(rng, cx, cy, unif(rng, 0.6, 1.2))};
      const bool overlap = overlap_mask >> at & 1u;
      const double ang = unif(rng, 0, 2 * M_PI);
      const double shift = overlap ? 0.02 : 8.0;
      rb[at] = {RepKind::Polytope,
                random_triangle(rng, cx + shift * std::cos(ang),
                                cy + shift * std::sin(ang), unif(rng, 0.6, 1.2))};
      if (overlap) expected.push_back(at);
    }
    StableSet s1(alg, 2, std::move(ra)), s2(alg, 2, std::move(rb));
    bool threw = false;
    try {
      strong_separation(s1, s2);
    } catch (const EventError& e) {
      threw = true;
      require(e.kind() == ErrorKind::NotDisjoint, "wrong error kind on overlap");
      require(e.atoms() == expected,
              "overlap event is not the maximal one (case " + std::to_string(t) + ")");
    }
    require(threw, "intersecting pair was declared disjoint (case " +
                       std::to_string(t) + ")");
  }
  return "100 disjoint pairs certified exactly, 100 overlaps localized";
}

// ---------------------------------------------------------------------------
// 5. Polar/bipolar against an independent hull oracle.

std::string criterion5() {
  std::mt19937_64 rng(505);
  for (int t = 0; t < 100; ++t) {
    const std::size_t atoms = 1 + rng() % 3;
    MeasureAlgebra alg = random_algebra(rng, atoms);
    std::vector<AtomRep> reps(atoms);
    for (AtomRep& r : reps) {
      const std::size_t n = 3 + rng() % 6;
      r.kind = RepKind::Points;
      for (std::size_t i = 0; i < 2 * n; ++i)
        r.flat.push_back((static_cast<double>(rng() % 33) - 16.0) / 8.0);
    }
    StableSet s(alg, 2, std::move(reps));
    PolarResult pr = polar_and_bipolar(s);
    require(pr.bipolar.has_value(), "bipolar missing");
    for (std::size_t at = 0; at < atoms; ++at) {
      std::vector<geom::Pt> cloud;
      for (std::size_t i = 0; i < s.count(at); ++i) {
        auto p = s.point(at, i);
        cloud.push_back({p[0], p[1]});
      }
      cloud.push_back({0.0, 0.0});
      std::vector<geom::Pt> oracle = geom::hull2d(cloud);
      std::vector<geom::Pt> bip;
      for (std::size_t i = 0; i < pr.bipolar->count(at); ++i) {
        auto p = pr.bipolar->point(at, i);
        bip.push_back({p[0], p[1]});
      }
      // Hausdorff distance between the convex bodies the vertex lists span.
      double h = 0.0;
      for (const auto& v : bip)
        h = std::max(h, std::sqrt(geom::dist2_to_hull(v, oracle, 2)));
      for (const auto& w : oracle)
        h = std::max(h, std::sqrt(geom::dist2_to_hull(w, bip, 2)));
      require(h <= kHausdorffTol,
              "bipolar deviates from conv(S u {0}) by " + std::to_string(h) +
                  " (case " + std::to_string(t) + ")");
    }
  }

  // unit square -> diamond polar, square bipolar
  MeasureAlgebra one(std::vector<double>{1.0});
  AtomRep square{RepKind::Polytope, {1, 1, -1, 1, -1, -1, 1, -1}};
  StableSet sq(one, 2, {square});
  PolarResult pr = polar_and_bipolar(sq);
  require(pr.bounded && pr.polar.has_value(), "square polar should be bounded");
  std::vector<geom::Pt> diamond{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<geom::Pt> got;
  for (std::size_t i = 0; i < pr.polar->count(0); ++i) {
    auto p = pr.polar->point(0, i);
    got.push_back({p[0], p[1]});
  }
  require(got.size() == 4, "square polar should have 4 vertices");
  require(geom::hausdorff(got, diamond) <= 1e-12, "square polar is not the diamond");
  std::vector<geom::Pt> bip, sqv{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (std::size_t i = 0; i < pr.bipolar->count(0); ++i) {
    auto p = pr.bipolar->point(0, i);
    bip.push_back({p[0], p[1]});
  }
  require(geom::hausdorff(bip, sqv) <= 1e-12, "square bipolar is not the square");
  return "100 random bipolars within 1e-9 of the hull oracle; square/diamond "
         "duality exact";
}

// ---------------------------------------------------------------------------
// 6. Discrete Fenchel conjugation: quadratic envelope and f** <= f.

std::string criterion6() {
  MeasureAlgebra one(std::vector<double>{1.0});
  for (double h : {0.1, 0.01}) {
    const std::size_t n = static_cast<std::size_t>(std::lround(4.0 / h)) + 1;
    AtomRep gr;
    gr.kind = RepKind::Points;
    for (std::size_t i = 0; i < n; ++i)
      gr.flat.push_back(-2.0 + static_cast<double>(i) * h);
    StableSet grid(one, 1, {gr});
    FunctionTable f = FunctionTable::tabulate(
        grid, [](std::size_t, std::span<const double> p) {
          return 0.5 * p[0] * p[0];
        });
    AtomRep du;
    du.kind = RepKind::Points;
    for (std::size_t j = 0; j + 1 < n; ++j)
      du.flat.push_back(-2.0 + (static_cast<double>(j) + 0.5) * h);
    StableSet dual(one, 1, {du});
    FunctionTable fss = fenchel_biconjugate(f, dual);
    double max_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::fabs(gr.flat[i]) > 1.0 + 1e-12) continue;  // inner half
      max_err = std::max(max_err, std::fabs(f.value(0, i) - fss.value(0, i)));
    }
    require(max_err <= 2.0 * h,
            "biconjugate of x^2/2 misses by " + std::to_string(max_err) +
                " at step " + std::to_string(h));
  }

  // Dyadic lattices keep every product and difference exact, so the envelope
  // inequality must hold with plain double comparisons.
  std::mt19937_64 rng(606);
  for (int t = 0; t < 100; ++t) {
    const std::size_t atoms = 1 + rng() % 3;
    const std::size_t dim = 1 + rng() % 2;
    MeasureAlgebra alg = random_algebra(rng, atoms);
    auto dyadic16 = [&] {
      return (static_cast<double>(rng() % 65) - 32.0) / 16.0;
    };
    std::vector<AtomRep> greps(atoms), dreps(atoms);
    std::vector<std::vector<double>> values(atoms);
    for (std::size_t at = 0; at < atoms; ++at) {
      const std::size_t np = 3 + rng() % 7, nd = 3 + rng() % 7;
      greps[at].kind = RepKind::Points;
      dreps[at].kind = RepKind::Points;
      for (std::size_t i = 0; i < np * dim; ++i) greps[at].flat.push_back(dyadic16());
      for (std::size_t i = 0; i < nd * dim; ++i) dreps[at].flat.push_back(dyadic16());
      for (std::size_t i = 0; i < np; ++i)
        values[at].push_back((static_cast<double>(rng() % 257) - 128.0) / 32.0);
    }
    StableSet grid(alg, dim, std::move(greps));
    StableSet dual(alg, dim, std::move(dreps));
    FunctionTable f(grid, std::move(values));
    FunctionTable fss = fenchel_biconjugate(f, dual);
    for (std::size_t at = 0; at < atoms; ++at)
      for (std::size_t i = 0; i < grid.count(at); ++i)
        require(fss.value(at, i) <= f.value(at, i),
                "f** exceeded f on a dyadic lattice (case " + std::to_string(t) + ")");
  }
  return "quadratic envelope within 2h on the inner half; f** <= f exact on "
         "100 dyadic tables";
}

// ---------------------------------------------------------------------------
// 7. Topology witnesses and the neighborhood chain, sampled audits.

Seminorm random_local_seminorm(std::mt19937_64& rng, const MeasureAlgebra& alg,
                               std::size_t dim) {
  if (rng() % 3 == 0) {
    std::vector<double> flat(alg.atoms() * dim);
    for (double& x : flat) {
      const double mag = unif(rng, 0.3, 2.0);
      x = (rng() & 1u) ? mag : -mag;
    }
    return Seminorm::pairing(L0Vector(alg, dim, std::move(flat)));
  }
  std::vector<double> w(dim);
  for (double& x : w) x = unif(rng, 0.2, 2.0);
  const double exps[3] = {1.0, 2.0, std::numeric_limits<double>::infinity()};
  return Seminorm::weighted(alg, dim, std::move(w), exps[rng() % 3]);
}

// label atoms with 1..max_blocks tags, renumbered to dense block ids
std::vector<Event> random_blocks(std::mt19937_64& rng, const MeasureAlgebra& alg,
                                 std::size_t max_blocks) {
  const std::size_t atoms = alg.atoms();
  std::vector<std::size_t> label(atoms);
  for (auto& l : label) l = rng() % max_blocks;
  std::vector<Event> blocks;
  std::vector<std::size_t> seen;
  for (std::size_t a = 0; a < atoms; ++a) {
    std::size_t k = seen.size();
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i] == label[a]) { k = i; break; }
    if (k == seen.size()) {
      seen.push_back(label[a]);
      blocks.push_back(Event::empty(alg));
    }
    blocks[k].insert(a);
  }
  return blocks;
}

std::string criterion7() {
  std::mt19937_64 rng(707);
  long chain_hits = 0, witness_hits = 0, refine_hits = 0;
  for (int fam = 0; fam < 200; ++fam) {
    const std::size_t atoms = 2 + rng() % 7;  // 2..8
    const std::size_t dim = 1 + rng() % 2;
    MeasureAlgebra alg = random_algebra(rng, atoms);
    const std::size_t m = 1 + rng() % 3;
    std::vector<Seminorm> members;
    for (std::size_t i = 0; i < m; ++i)
      members.push_back(random_local_seminorm(rng, alg, dim));
    const double eps = unif(rng, 0.5, 2.0);
    const double lam = unif(rng, 0.1, 0.8);
    L0Vector center = L0Vector::zero(alg, dim);

    auto sample = [&](double target) {
      std::vector<double> flat(atoms * dim);
      const double s = target * std::exp(unif(rng, -2.2, 0.7)) /
                       std::sqrt(static_cast<double>(dim));
      for (double& x : flat) x = s * gauss(rng);
      return L0Vector(alg, dim, std::move(flat));
    };

    // chain: stable ball (blockwise supersets) -> L0 ball -> eps-lambda ball
    Neighborhood u0 = Neighborhood::l0_ball(center, members,
                                            L0Scalar::constant(alg, eps));
    Neighborhood uel = Neighborhood::eps_lambda(center, members, eps, lam);
    std::vector<Event> blocks = random_blocks(rng, alg, 1 + rng() % 3);
    std::vector<std::vector<Seminorm>> items;
    std::vector<std::int64_t> counts(atoms, 0);
    for (const Event& bl : blocks) {
      std::vector<Seminorm> list = members;
      if (rng() & 1u) list.push_back(random_local_seminorm(rng, alg, dim));
      for (std::size_t a = 0; a < atoms; ++a)
        if (bl.contains(a)) counts[a] = static_cast<std::int64_t>(list.size());
      items.push_back(std::move(list));
    }
    StableFamily<Seminorm> family(alg, counts, blocks, items);
    Neighborhood us = Neighborhood::stable_ball(center, family,
                                                L0Scalar::constant(alg, eps));
    for (int s = 0; s < 10000; ++s) {
      L0Vector x = sample(eps);
      const bool b0 = u0.contains(x);
      const bool bs = us.contains(x);
      const bool bel = uel.contains(x);
      require(!(bs && !b0), "stable ball escaped the L0 ball (family " +
                                std::to_string(fam) + ")");
      require(!(b0 && !bel), "L0 ball escaped the eps-lambda ball (family " +
                                 std::to_string(fam) + ")");
      chain_hits += b0;
    }

    // eps-lambda witness: ball built from the witness members must sit
    // inside the ball of the concatenated sup seminorm.
    std::vector<Event> qblocks = random_blocks(rng, alg, 1 + rng() % 3);
    std::vector<Seminorm> qparts;
    for (std::size_t k = 0; k < qblocks.size(); ++k) {
      std::vector<Seminorm> sub;
      for (const Seminorm& sn : members)
        if (rng() & 1u) sub.push_back(sn);
      if (sub.empty()) sub.push_back(members[rng() % members.size()]);
      qparts.push_back(Seminorm::sup_hull(std::move(sub)));
    }
    Seminorm q = qblocks.size() == 1
                     ? qparts[0]
                     : Seminorm::concat(Partition(alg, qblocks), qparts);
    EpsLambdaWitness wit = epslambda_witness(q, eps, lam);
    Neighborhood uorig = Neighborhood::eps_lambda(center, {q}, eps, lam);
    Neighborhood unew =
        Neighborhood::eps_lambda(center, wit.members, wit.eps, wit.lam);
    for (int s = 0; s < 10000; ++s) {
      L0Vector x = sample(wit.eps);
      const bool in_new = unew.contains(x);
      require(!(in_new && !uorig.contains(x)),
              "witness ball left the original ball (family " +
                  std::to_string(fam) + ")");
      witness_hits += in_new;
    }

    // refinement witness: translated balls (shrunk radius, possibly more
    // members) refine the original eps-lambda ball.
    std::vector<double> cvals(atoms);
    for (double& c : cvals) c = unif(rng, 0.35, 0.9);
    L0Scalar shrink(alg, cvals);
    const bool add_member = rng() & 1u;
    Seminorm extra = random_local_seminorm(rng, alg, dim);
    BallTranslator translator = [&](const L0BallSpec& in) {
      L0BallSpec out{in.members, in.radius * shrink};
      if (add_member) out.members.push_back(extra);
      return out;
    };
    RefinementWitness wit2 = topology_refinement_witness(
        members, eps, lam, translator, 600, 1000 + fam);
    Neighborhood uw =
        Neighborhood::eps_lambda(center, wit2.members, wit2.eps, wit2.lam);
    for (int s = 0; s < 10000; ++s) {
      L0Vector x = sample(wit2.eps);
      const bool in_w = uw.contains(x);
      require(!(in_w && !uel.contains(x)),
              "refined ball left the original ball (family " +
                  std::to_string(fam) + ")");
      refine_hits += in_w;
    }
  }
  require(chain_hits > 0 && witness_hits > 0 && refine_hits > 0,
          "sampled audits never landed inside the balls");
  return "200 families: chain implications, witness and refinement "
         "containments hold on 10^4 samples each (hits " +
         std::to_string(chain_hits) + "/" + std::to_string(witness_hits) + "/" +
         std::to_string(refine_hits) + ")";
}

// ---------------------------------------------------------------------------
// 8. Cluster lemma at depth 16, and the impossibility report on 4 atoms.

std::string criterion8() {
  const std::size_t atoms = std::size_t{1} << 16;
  MeasureAlgebra alg = MeasureAlgebra::uniform(atoms);
  const int n_peaks = 8;
  std::vector<L0Scalar> rs;
  for (int n = 0; n < n_peaks; ++n) {
    std::vector<double> v(atoms);
    for (std::size_t a = 0; a < atoms; ++a)
      v[a] = static_cast<double>(1 + (a * 7919u + static_cast<std::size_t>(n)) % 13) / 8.0;
    rs.push_back(L0Scalar(alg, std::move(v)));
  }
  ClusterCertificate cert = cluster_lemma_construct(rs);
  require(cert.bs.size() == n_peaks && cert.cs.size() == n_peaks,
          "certificate chain has the wrong length");
  require(cert.r.strictly_positive(), "threshold r vanishes somewhere");
  for (int n = 0; n < n_peaks; ++n) {
    require(!cert.cs[n].is_empty(), "certificate event " + std::to_string(n) +
                                        " has zero probability");
    require(cert.cs[n].leq(cert.bs[n]), "certificate leaves its chain link");
    for (int k = n + 1; k < n_peaks; ++k)
      require(cert.cs[n].disjoint_from(cert.cs[k]),
              "certificate events overlap");
    // P(r_n >= r) > 0, exactly: witnessed on every atom of C_n.
    for (std::size_t a : cert.cs[n].atom_list())
      require(rs[n][a] >= cert.r[a], "r_n < r on its own certificate event");
  }
  for (int n = 0; n + 1 < n_peaks; ++n)
    require(cert.bs[n + 1].prob() < 0.5 * cert.bs[n].prob(),
            "mass halving is not strict");

  MeasureAlgebra small = MeasureAlgebra::uniform(4);
  std::vector<L0Scalar> rs4(4, L0Scalar::one(small));
  bool reported = false;
  try {
    cluster_lemma_construct(rs4);
  } catch (const ConstructionImpossibleError& e) {
    reported = true;
    require(e.achievable_prefix() == 2,
            "achievable prefix should be 2, got " +
                std::to_string(e.achievable_prefix()));
  }
  require(reported, "4-atom chain of length 4 was not rejected");
  return "65536-atom chain of 8 certified exactly; 4-atom impossibility "
         "reports prefix 2";
}

// ---------------------------------------------------------------------------
// 9. Stable basis ranks vs a planted oracle; coordinate round trips.

std::string criterion9() {
  std::mt19937_64 rng(909);
  for (int t = 0; t < 200; ++t) {
    const std::size_t atoms = 1 + rng() % 4;
    const std::size_t d = 1 + rng() % 4;
    const std::size_t g = 1 + rng() % 5;
    MeasureAlgebra alg = random_algebra(rng, atoms);

    // Plant per-atom rank k: generators are integer combinations of k scaled
    // coordinate directions, the first k rows upper triangular with nonzero
    // diagonal. The rank is known by construction, independent of any
    // elimination.
    std::vector<std::size_t> planted(atoms);
    std::vector<L0Vector> gens(g, L0Vector::zero(alg, d));
    bool any = false;
    for (std::size_t at = 0; at < atoms; ++at) {
      const std::size_t kmax = std::min(d, g);
      std::size_t k = (rng() % 8 == 0) ? 0 : 1 + rng() % kmax;
      if (at + 1 == atoms && !any && k == 0) k = 1;
      if (k > 0) any = true;
      planted[at] = k;
      std::vector<std::size_t> dirs(d);
      std::iota(dirs.begin(), dirs.end(), 0);
      std::shuffle(dirs.begin(), dirs.end(), rng);
      std::vector<double> scale(k);
      const double opts[3] = {0.5, 1.0, 2.0};
      for (double& s : scale) s = opts[rng() % 3];
      for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          double c;
          if (i < k)
            c = (i == j)   ? static_cast<double>(1 + rng() % 3)
                : (j > i)  ? static_cast<double>(rng() % 5) - 2.0
                           : 0.0;
          else
            c = static_cast<double>(rng() % 7) - 3.0;
          gens[i].coord(at, dirs[j]) += c * scale[j];
        }
    }

    StableBasis basis = extract_stable_basis(gens);
    for (std::size_t at = 0; at < atoms; ++at)
      require(basis.ranks()[at] == static_cast<std::int64_t>(planted[at]),
              "rank differs from the planted oracle (case " + std::to_string(t) +
                  ", atom " + std::to_string(at) + ")");

    // random module combination of the generators -> coordinates -> back
    L0Vector x = L0Vector::zero(alg, d);
    for (std::size_t i = 0; i < g; ++i) {
      std::vector<double> rv(atoms);
      for (double& r : rv)
        r = (static_cast<double>(rng() % 65) - 32.0) / 4.0;
      x = x + gens[i].scaled(L0Scalar(alg, std::move(rv)));
    }
    StableFamily<L0Scalar> coords = coordinates(basis, x);
    L0Vector back = stable_lincomb(coords, basis.vectors());
    L0Scalar err = (x - back).norm_inf();
    for (std::size_t at = 0; at < atoms; ++at)
      require(err[at] <= kRoundTripTol,
              "coordinate round trip drifted (case " + std::to_string(t) + ")");
  }

  // indicator generators reproduce themselves bitwise
  MeasureAlgebra alg3 = MeasureAlgebra::uniform(3);
  std::vector<L0Vector> es;
  for (std::size_t j = 0; j < 3; ++j) {
    L0Vector e = L0Vector::zero(alg3, 3);
    for (std::size_t at = 0; at < 3; ++at) e.coord(at, j) = 1.0;
    es.push_back(e);
  }
  StableBasis ind = extract_stable_basis(es);
  require(ind.vectors().block_count() == 1, "indicator basis should be one block");
  require(ind.ranks() == std::vector<std::int64_t>({3, 3, 3}),
          "indicator basis rank should be 3 everywhere");
  for (std::size_t j = 0; j < 3; ++j)
    require(ind.vectors().items(0)[j] == es[j],
            "indicator basis items are not reproduced exactly");
  return "200 planted-rank generator sets matched; round trips within 1e-9; "
         "indicator basis exact";
}

// ---------------------------------------------------------------------------
// 10. Hahn-Banach: restriction agreement and sampled domination.

std::string criterion10() {
  std::mt19937_64 rng(1010);
  for (int t = 0; t < 100; ++t) {
    const std::size_t atoms = 1 + rng() % 3;
    const std::size_t dim = 1 + rng() % 3;
    MeasureAlgebra alg = random_algebra(rng, atoms);
    std::vector<double> w(dim);
    for (double& x : w) x = unif(rng, 0.5, 2.5);
    const double exps[3] = {1.0, 2.0, std::numeric_limits<double>::infinity()};
    Seminorm sn = Seminorm::weighted(alg, dim, w, exps[rng() % 3]);
    Gauge p = [sn](const L0Vector& x) { return sn(x); };

    std::vector<double> vflat(atoms * dim);
    for (double& x : vflat) {
      const double mag = unif(rng, 0.6, 2.0);
      x = (rng() & 1u) ? mag : -mag;
    }
    L0Vector v(alg, dim, std::move(vflat));
    StableBasis f_basis = extract_stable_basis(std::vector<L0Vector>{v});
    L0Scalar pv = sn(v);

    // the functional arrives as a full row; only its restriction to the
    // span of v is data. Pick the least-norm row with <row, v> = c * p(v).
    std::vector<double> fvals(atoms);
    std::vector<double> frow(atoms * dim);
    for (std::size_t a = 0; a < atoms; ++a) {
      const double c = unif(rng, 0.1, 0.7) * ((rng() & 1u) ? 1.0 : -1.0);
      fvals[a] = c * pv[a];
      double vv = 0.0;
      for (std::size_t j = 0; j < dim; ++j) vv += v.coord(a, j) * v.coord(a, j);
      for (std::size_t j = 0; j < dim; ++j)
        frow[a * dim + j] = fvals[a] / vv * v.coord(a, j);
    }
    ModuleMap f(alg, 1, dim, std::move(frow));
    ModuleMap ext = hahn_banach_extend(p, f_basis, f);

    L0Scalar on_v = ext.apply_functional(v);
    for (std::size_t a = 0; a < atoms; ++a)
      require(std::fabs(on_v[a] - fvals[a]) <=
                  kRestrictRelTol * std::max(1.0, std::fabs(fvals[a])),
              "extension moved on the submodule (case " + std::to_string(t) + ")");

    for (int s = 0; s < 10000; ++s) {
      const double scale = std::exp(unif(rng, -1.0, 2.0));
      std::vector<double> flat(atoms * dim);
      for (double& x : flat) x = scale * gauss(rng);
      L0Vector x(alg, dim, std::move(flat));
      L0Scalar fx = ext.apply_functional(x);
      L0Scalar px = p(x);
      for (std::size_t a = 0; a < atoms; ++a)
        require(fx[a] <= px[a] + kDominationRelSlack * std::max(1.0, px[a]),
                "extension exceeded the gauge (case " + std::to_string(t) + ")");
    }
  }
  return "100 extensions: restriction within 1e-10 relative, domination on "
         "10^4 samples each";
}

// ---------------------------------------------------------------------------
// 11. Greedy nets cover exhaustively; metric axioms; d-infinity identity.

std::string criterion11() {
  std::mt19937_64 rng(1111);
  for (int t = 0; t < 30; ++t) {
    const std::size_t atoms = 1 + rng() % 4;
    const std::size_t dim = 1 + rng() % 3;
    MeasureAlgebra alg = random_algebra(rng, atoms);
    std::vector<AtomRep> reps(atoms);
    for (AtomRep& r : reps) {
      const std::size_t n = 1 + rng() % 30;
      r.kind = RepKind::Points;
      for (std::size_t i = 0; i < n * dim; ++i)
        r.flat.push_back(unif(rng, -4, 4));
    }
    StableSet k(alg, dim, std::move(reps));
    StableMetric d = (rng() & 1u)
                         ? StableMetric::euclidean(alg, dim)
                         : StableMetric::seminorm_induced(Seminorm::weighted(
                               alg, dim,
                               std::vector<double>(dim, unif(rng, 0.3, 2.0)),
                               2.0));
    std::vector<double> rv(atoms);
    for (double& r : rv) r = unif(rng, 0.3, 2.5);
    L0Scalar radius(alg, std::move(rv));

    EpsNet net = stable_eps_net(k, d, radius);
    for (std::size_t at = 0; at < atoms; ++at) {
      const std::size_t block = net.centers.block_of(at);
      const auto& centers = net.centers.items(block);
      require(centers.size() == net.center_indices[at].size() &&
                  static_cast<std::int64_t>(centers.size()) ==
                      net.centers.counts()[at],
              "net sizes and indices disagree");
      for (std::size_t m = 0; m < centers.size(); ++m) {
        auto src = k.point(at, net.center_indices[at][m]);
        auto got = centers[m].point(at);
        require(std::equal(src.begin(), src.end(), got.begin()),
                "net center is not a source point");
      }
      for (std::size_t i = 0; i < k.count(at); ++i) {
        L0Vector xi = L0Vector::constant(alg, k.point(at, i));
        bool covered = false;
        for (std::size_t m = 0; m < centers.size() && !covered; ++m)
          covered = d(xi, centers[m])[at] <= radius[at];
        require(covered, "net left a point uncovered (case " +
                             std::to_string(t) + ")");
      }
    }
  }

  // metric axioms, 1000 triples per kind
  MeasureAlgebra alg4 = MeasureAlgebra::uniform(4);
  spot_check_metric(StableMetric::euclidean(alg4, 3), 1000, 42);
  spot_check_metric(StableMetric::seminorm_induced(Seminorm::weighted(
                        alg4, 3, {1.5, 0.4, 2.0}, 1.0)),
                    1000, 43);
  std::vector<AtomRep> greps(4);
  for (AtomRep& r : greps) {
    const std::size_t n = 2 + rng() % 4;
    r.kind = RepKind::Points;
    for (std::size_t i = 0; i < n; ++i) r.flat.push_back(unif(rng, -2, 2));
  }
  StableSet mgrid(alg4, 1, std::move(greps));
  spot_check_metric(StableMetric::d_infinity_on(mgrid), 1000, 44);

  // identity of indiscernibles for d-infinity, bit-exact
  MeasureAlgebra alg3 = MeasureAlgebra::uniform(3);
  std::vector<AtomRep> eq(3);
  for (AtomRep& r : eq) {
    r.kind = RepKind::Points;
    for (std::size_t i = 0; i < 5; ++i)
      r.flat.push_back((static_cast<double>(rng() % 65) - 32.0) / 16.0);
  }
  StableSet egrid(alg3, 1, std::move(eq));
  std::vector<std::vector<double>> fv(3);
  for (auto& row : fv)
    for (int i = 0; i < 5; ++i)
      row.push_back((static_cast<double>(rng() % 65) - 32.0) / 32.0);
  FunctionTable f(egrid, fv);
  FunctionTable same(egrid, fv);
  L0Scalar zero_gap = d_infinity(f, same);
  for (std::size_t a = 0; a < 3; ++a)
    require(zero_gap[a] == 0.0, "d-infinity nonzero on identical tables");
  const double bump = std::ldexp(1.0, -40);
  fv[1][2] += bump;
  FunctionTable gbumped(egrid, fv);
  L0Scalar gbump = d_infinity(f, gbumped);
  require(gbump[0] == 0.0 && gbump[2] == 0.0, "bump leaked to other atoms");
  require(gbump[1] == bump, "d-infinity missed an exactly-representable bump");

  StableMetric dinf = StableMetric::d_infinity_on(egrid);
  require(dinf(f.to_vector(), same.to_vector()) == L0Scalar::zero(alg3),
          "metric form nonzero on identical tables");
  L0Scalar mv = dinf(f.to_vector(), gbumped.to_vector());
  require(mv[0] == 0.0 && mv[1] == bump && mv[2] == 0.0,
          "metric form disagrees with the table distance");
  return "30 nets cover exhaustively; 1000-triple axiom checks pass for all "
         "three kinds; d-infinity identity exact";
}

}  // namespace

int main() {
  run_criterion(1, 5.0, criterion1);
  run_criterion(2, 10.0, criterion2);
  run_criterion(3, 10.0, criterion3);
  run_criterion(4, 10.0, criterion4);
  run_criterion(5, 10.0, criterion5);
  run_criterion(6, 10.0, criterion6);
  run_criterion(7, 30.0, criterion7);
  run_criterion(8, 20.0, criterion8);
  run_criterion(9, 10.0, criterion9);
  run_criterion(10, 10.0, criterion10);
  run_criterion(11, 10.0, criterion11);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
