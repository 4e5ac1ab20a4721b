#include "stable/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace stable {

StableFunction::StableFunction(MeasureAlgebra alg, std::size_t dim,
                               Evaluator eval, bool convex, bool lsc,
                               std::string name)
    : alg_(std::move(alg)),
      dim_(dim),
      eval_(std::move(eval)),
      convex_(convex),
      lsc_(lsc),
      name_(std::move(name)) {
  if (dim_ == 0)
    throw StableError(ErrorKind::ValidationError,
                      "StableFunction: dim must be >= 1");
  if (!eval_)
    throw StableError(ErrorKind::ValidationError,
                      "StableFunction: empty evaluator");
}

const std::vector<std::string>& StableFunction::builtin_names() {
  static const std::vector<std::string> names = {
      "norm2sq", "norm2", "norm1", "norminf", "affine", "quad_diag", "dist2sq"};
  return names;
}

StableFunction StableFunction::builtin(MeasureAlgebra alg, std::size_t dim,
                                       const std::string& name,
                                       const std::vector<double>& params) {
  for (double p : params)
    if (!std::isfinite(p))
      throw StableError(ErrorKind::ValidationError,
                        "builtin: parameters must be finite");
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw StableError(ErrorKind::ValidationError,
                        "builtin '" + name + "' expects " + std::to_string(n) +
                            " parameter(s), got " +
                            std::to_string(params.size()));
  };
  // every builtin computes each atom's value from that atom's point alone
  auto per_atom = [alg, dim](std::function<double(const double*)> f) {
    return [alg, dim, f = std::move(f)](const L0Vector& x) {
      require_compatible(alg, x.algebra(), "builtin function");
      if (x.dim() != dim)
        throw StableError(ErrorKind::ArityError,
                          "builtin function: dimension mismatch");
      std::vector<double> out(alg.atoms());
      for (std::size_t a = 0; a < alg.atoms(); ++a)
        out[a] = f(x.point(a).data());
      return L0Scalar(alg, std::move(out));
    };
  };
  if (name == "norm2sq") {
    need(0);
    return StableFunction(alg, dim, per_atom([dim](const double* p) {
                            double s = 0.0;
                            for (std::size_t j = 0; j < dim; ++j) s += p[j] * p[j];
                            return s;
                          }),
                          true, true, name);
  }
  if (name == "norm2") {
    need(0);
    return StableFunction(alg, dim, per_atom([dim](const double* p) {
                            double s = 0.0;
                            for (std::size_t j = 0; j < dim; ++j) s += p[j] * p[j];
                            return std::sqrt(s);
                          }),
                          true, true, name);
  }
  if (name == "norm1") {
    need(0);
    return StableFunction(alg, dim, per_atom([dim](const double* p) {
                            double s = 0.0;
                            for (std::size_t j = 0; j < dim; ++j)
                              s += std::fabs(p[j]);
                            return s;
                          }),
                          true, true, name);
  }
  if (name == "norminf") {
    need(0);
    return StableFunction(alg, dim, per_atom([dim](const double* p) {
                            double s = 0.0;
                            for (std::size_t j = 0; j < dim; ++j)
                              s = std::max(s, std::fabs(p[j]));
                            return s;
                          }),
                          true, true, name);
  }
  if (name == "affine") {
    need(dim + 1);
    return StableFunction(alg, dim, per_atom([dim, params](const double* p) {
                            double s = params[dim];
                            for (std::size_t j = 0; j < dim; ++j)
                              s += params[j] * p[j];
                            return s;
                          }),
                          true, true, name);
  }
  if (name == "quad_diag") {
    need(2 * dim + 1);
    bool convex = true;
    for (std::size_t j = 0; j < dim; ++j) convex = convex && params[j] >= 0.0;
    return StableFunction(alg, dim, per_atom([dim, params](const double* p) {
                            double s = params[2 * dim];
                            for (std::size_t j = 0; j < dim; ++j)
                              s += params[j] * p[j] * p[j] +
                                   params[dim + j] * p[j];
                            return s;
                          }),
                          convex, true, name);
  }
  if (name == "dist2sq") {
    need(dim);
    return StableFunction(alg, dim, per_atom([dim, params](const double* p) {
                            double s = 0.0;
                            for (std::size_t j = 0; j < dim; ++j) {
                              const double d = p[j] - params[j];
                              s += d * d;
                            }
                            return s;
                          }),
                          true, true, name);
  }
  throw StableError(ErrorKind::ValidationError,
                    "unknown builtin function '" + name + "'");
}

void spot_check_stable(const StableFunction& f, int samples, std::uint64_t seed) {
  const MeasureAlgebra& alg = f.algebra();
  const std::size_t n = alg.atoms();
  const std::size_t dim = f.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < samples; ++t) {
    std::vector<double> xf(n * dim), yf(n * dim);
    for (double& v : xf) v = gauss(rng);
    for (double& v : yf) v = gauss(rng);
    L0Vector x(alg, dim, xf), y(alg, dim, yf);
    Event a = Event::empty(alg);
    for (std::size_t i = 0; i < n; ++i)
      if (rng() & 1) a.insert(i);
    std::vector<double> zf(n * dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        zf[i * dim + j] = a.contains(i) ? xf[i * dim + j] : yf[i * dim + j];
    L0Vector z(alg, dim, std::move(zf));
    L0Scalar fx = f(x), fy = f(y), fz = f(z);
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < n; ++i) {
      const double expect = a.contains(i) ? fx[i] : fy[i];
      if (fz[i] != expect) bad.push_back(i);
    }
    if (!bad.empty())
      throw EventError(ErrorKind::NotStable,
                       "function value does not paste along concatenations",
                       bad);
  }
}

ArgminResult conditional_argmin(const StableFunction& f, const StableSet& k,
                                Exec exec) {
  require_compatible(f.algebra(), k.algebra(), "conditional_argmin");
  if (f.dim() != k.dim())
    throw StableError(ErrorKind::ArityError,
                      "conditional_argmin: dimension mismatch");
  if (!k.all_points())
    throw StableError(ErrorKind::ValidationError,
                      "conditional_argmin: needs a Points rep");
  spot_check_stable(f, 16, 0x5eed);
  const MeasureAlgebra& alg = k.algebra();
  const std::size_t n = alg.atoms();
  const std::size_t dim = k.dim();
  std::size_t m = 0;
  for (std::size_t a = 0; a < n; ++a) m = std::max(m, k.count(a));

  // column j = each atom's j-th point (clamped); evaluating f on columns puts
  // every per-atom value through the same code path as a selector would
  std::vector<L0Scalar> vals;
  vals.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> flat(n * dim);
    for (std::size_t a = 0; a < n; ++a) {
      auto p = k.point(a, std::min(j, k.count(a) - 1));
      std::copy(p.begin(), p.end(), flat.begin() + a * dim);
    }
    vals.push_back(f(L0Vector(alg, dim, std::move(flat))));
  }

  std::vector<double> x0(n * dim), value(n);
  for_each_index(exec, n, [&](std::size_t a) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < k.count(a); ++j) {
      const double vj = vals[j][a], vb = vals[best][a];
      if (vj < vb) {
        best = j;
      } else if (vj == vb) {
        auto pj = k.point(a, j);
        auto pb = k.point(a, best);
        if (std::lexicographical_compare(pj.begin(), pj.end(), pb.begin(),
                                         pb.end()))
          best = j;
      }
    }
    auto p = k.point(a, best);
    std::copy(p.begin(), p.end(), x0.begin() + a * dim);
    value[a] = vals[best][a];
  });
  return ArgminResult{L0Vector(alg, dim, std::move(x0)),
                      L0Scalar(alg, std::move(value))};
}

namespace {

L0Vector sample_point(const StableSet& k, std::mt19937_64& rng) {
  const MeasureAlgebra& alg = k.algebra();
  const std::size_t dim = k.dim();
  std::vector<double> flat(alg.atoms() * dim);
  std::exponential_distribution<double> expd(1.0);
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    if (k.rep(a).kind == RepKind::Points) {
      const std::size_t i = rng() % k.count(a);
      auto p = k.point(a, i);
      std::copy(p.begin(), p.end(), flat.begin() + a * dim);
    } else {
      // random convex combination of the vertices
      std::vector<double> w(k.count(a));
      double s = 0.0;
      for (double& v : w) s += v = expd(rng);
      for (std::size_t i = 0; i < k.count(a); ++i) {
        auto p = k.point(a, i);
        for (std::size_t j = 0; j < dim; ++j)
          flat[a * dim + j] += w[i] / s * p[j];
      }
    }
  }
  return L0Vector(alg, dim, std::move(flat));
}

}  // namespace

FixpointResult banach_fixpoint(const ContractionSpec& spec,
                               const L0Vector& start, bool record_trace) {
  const MeasureAlgebra& alg = spec.domain.algebra();
  require_compatible(alg, start.algebra(), "banach_fixpoint");
  require_compatible(alg, spec.rate.algebra(), "banach_fixpoint");
  require_compatible(alg, spec.tol.algebra(), "banach_fixpoint");
  if (start.dim() != spec.domain.dim())
    throw StableError(ErrorKind::ArityError,
                      "banach_fixpoint: start dimension mismatch");
  if (!spec.map)
    throw StableError(ErrorKind::ValidationError, "banach_fixpoint: empty map");
  const std::size_t n = alg.atoms();
  std::vector<std::size_t> bad;
  for (std::size_t a = 0; a < n; ++a) {
    if (spec.rate[a] < 0.0)
      throw StableError(ErrorKind::ValidationError,
                        "banach_fixpoint: negative rate");
    if (spec.rate[a] >= 1.0) bad.push_back(a);
  }
  if (!bad.empty())
    throw EventError(ErrorKind::RateNotContractive,
                     "banach_fixpoint: rate >= 1", bad);
  for (std::size_t a = 0; a < n; ++a)
    if (!(spec.tol[a] > 0.0))
      throw StableError(ErrorKind::ValidationError,
                        "banach_fixpoint: tolerance must be > 0");

  // sampled invariants: T maps the domain into itself and contracts at rate
  std::mt19937_64 rng(spec.seed);
  for (int t = 0; t < spec.spot_samples; ++t) {
    L0Vector x = sample_point(spec.domain, rng);
    L0Vector y = sample_point(spec.domain, rng);
    L0Vector tx = spec.map(x), ty = spec.map(y);
    if (!set_contains(spec.domain, tx, 1e-7))
      throw StableError(ErrorKind::ValidationError,
                        "banach_fixpoint: map leaves the domain on a sample");
    L0Scalar lhs = (tx - ty).norm2();
    L0Scalar rhs = (x - y).norm2();
    for (std::size_t a = 0; a < n; ++a)
      if (lhs[a] > spec.rate[a] * rhs[a] + 1e-9 * std::max(1.0, rhs[a]))
        throw StableError(ErrorKind::ValidationError,
                          "banach_fixpoint: sampled pair contracts slower "
                          "than the declared rate at atom " +
                              std::to_string(a));
  }

  const std::size_t dim = start.dim();
  std::vector<std::int64_t> iters(n, 0);
  std::vector<double> zflat(n * dim, 0.0);
  std::vector<bool> stopped(n, false);
  std::size_t remaining = n;
  L0Vector cur = start;
  FixpointResult out{start, StepNatural::constant(alg, 1), {}};
  if (record_trace) out.trace.push_back(start);
  for (int it = 1; it <= spec.max_iterations && remaining > 0; ++it) {
    L0Vector next = spec.map(cur);
    if (record_trace) out.trace.push_back(next);
    L0Scalar step = (cur - next).norm2();
    for (std::size_t a = 0; a < n; ++a) {
      if (stopped[a]) continue;
      if (step[a] <= spec.tol[a] * (1.0 - spec.rate[a])) {
        stopped[a] = true;
        iters[a] = it;
        auto p = next.point(a);
        std::copy(p.begin(), p.end(), zflat.begin() + a * dim);
        --remaining;
      }
    }
    cur = std::move(next);
  }
  if (remaining > 0) {
    std::vector<std::size_t> unconverged;
    for (std::size_t a = 0; a < n; ++a)
      if (!stopped[a]) unconverged.push_back(a);
    throw MaxIterationsError("banach_fixpoint: iteration cap reached",
                             unconverged,
                             static_cast<std::size_t>(spec.max_iterations));
  }
  out.z = L0Vector(alg, dim, std::move(zflat));
  out.iters = StepNatural(alg, std::move(iters));
  return out;
}

SeparationCertificate strong_separation(const StableSet& s1, const StableSet& s2) {
  require_compatible(s1.algebra(), s2.algebra(), "strong_separation");
  if (s1.dim() != s2.dim())
    throw StableError(ErrorKind::ArityError,
                      "strong_separation: dimension mismatch");
  const std::size_t dim = s1.dim();
  if (dim > 3)
    throw StableError(ErrorKind::DimensionUnsupported,
                      "strong_separation: supports d <= 3");
  const MeasureAlgebra& alg = s1.algebra();
  const std::size_t n = alg.atoms();
  std::vector<double> rows(n * dim, 0.0), gap(n, 0.0);
  std::vector<std::size_t> meet;
  for (std::size_t a = 0; a < n; ++a) {
    double scale = 1.0;
    std::vector<geom::Pt> diff;
    diff.reserve(s1.count(a) * s2.count(a));
    for (std::size_t i = 0; i < s2.count(a); ++i) {
      auto w = s2.point(a, i);
      for (std::size_t j = 0; j < s1.count(a); ++j) {
        auto v = s1.point(a, j);
        geom::Pt p(dim);
        for (std::size_t c = 0; c < dim; ++c) {
          p[c] = w[c] - v[c];
          scale = std::max(scale, std::fabs(w[c]) + std::fabs(v[c]));
        }
        diff.push_back(std::move(p));
      }
    }
    geom::MinNorm mn = geom::min_norm_in_hull(diff, dim);
    double nrm = std::sqrt(mn.dist2);
    if (nrm <= 1e-9 * scale) {
      meet.push_back(a);
      continue;
    }
    geom::Pt u(dim);
    for (std::size_t c = 0; c < dim; ++c) u[c] = mn.point[c] / nrm;
    // exact support gap along u, evaluated on the vertices themselves
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s2.count(a); ++i) {
      auto w = s2.point(a, i);
      double d = 0.0;
      for (std::size_t c = 0; c < dim; ++c) d += u[c] * w[c];
      lo = std::min(lo, d);
    }
    for (std::size_t j = 0; j < s1.count(a); ++j) {
      auto v = s1.point(a, j);
      double d = 0.0;
      for (std::size_t c = 0; c < dim; ++c) d += u[c] * v[c];
      hi = std::max(hi, d);
    }
    const double g = lo - hi;
    if (g <= 1e-12 * scale) {
      meet.push_back(a);
      continue;
    }
    for (std::size_t c = 0; c < dim; ++c) rows[a * dim + c] = u[c];
    gap[a] = g / 2.0;
  }
  if (!meet.empty())
    throw EventError(ErrorKind::NotDisjoint,
                     "strong_separation: hulls intersect on " +
                         std::to_string(meet.size()) + " atom(s)",
                     meet);
  return SeparationCertificate{ModuleMap(alg, 1, dim, std::move(rows)),
                               L0Scalar(alg, std::move(gap))};
}

FunctionTable fenchel_conjugate(const FunctionTable& f, const StableSet& dual_grid) {
  require_compatible(f.algebra(), dual_grid.algebra(), "fenchel_conjugate");
  if (!dual_grid.all_points())
    throw StableError(ErrorKind::ValidationError,
                      "fenchel_conjugate: dual grid must be a Points rep");
  if (dual_grid.dim() != f.grid().dim())
    throw StableError(ErrorKind::GridMismatch,
                      "fenchel_conjugate: grid dimensions differ");
  const MeasureAlgebra& alg = f.algebra();
  const std::size_t dim = f.grid().dim();
  std::vector<std::vector<double>> out(alg.atoms());
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    bool any_finite = false;
    for (std::size_t i = 0; i < f.grid().count(a); ++i)
      any_finite = any_finite || std::isfinite(f.value(a, i));
    if (!any_finite)
      throw StableError(ErrorKind::ValidationError,
                        "fenchel_conjugate: table is +inf everywhere at atom " +
                            std::to_string(a));
    out[a].resize(dual_grid.count(a));
    for (std::size_t yi = 0; yi < dual_grid.count(a); ++yi) {
      auto y = dual_grid.point(a, yi);
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t xi = 0; xi < f.grid().count(a); ++xi) {
        const double fv = f.value(a, xi);
        if (!std::isfinite(fv)) continue;  // +inf points never attain the sup
        auto x = f.grid().point(a, xi);
        double dot = 0.0;
        for (std::size_t c = 0; c < dim; ++c) dot += x[c] * y[c];
        best = std::max(best, dot - fv);
      }
      out[a][yi] = best;
    }
  }
  return FunctionTable(dual_grid, std::move(out));
}

FunctionTable fenchel_biconjugate(const FunctionTable& f,
                                  const StableSet& dual_grid) {
  return fenchel_conjugate(fenchel_conjugate(f, dual_grid), f.grid());
}

PolarResult polar_and_bipolar(const StableSet& s) {
  const std::size_t dim = s.dim();
  if (dim > 3)
    throw StableError(ErrorKind::DimensionUnsupported,
                      "polar_and_bipolar: supports d <= 3");
  const MeasureAlgebra& alg = s.algebra();
  const std::size_t n = alg.atoms();
  PolarResult res;
  res.polar_vrep.resize(n);
  res.polar_halfspaces.resize(n);
  std::vector<AtomRep> polar_reps(n), bipolar_reps(n);
  bool bounded = true;
  for (std::size_t a = 0; a < n; ++a) {
    // polar: one halfspace per generator point
    std::vector<geom::Halfspace>& hs = res.polar_halfspaces[a];
    for (std::size_t i = 0; i < s.count(a); ++i) {
      auto x = s.point(a, i);
      hs.push_back({geom::Pt(x.begin(), x.end()), 1.0});
    }
    geom::VRep vr = geom::polyhedron_vr(hs, dim);
    if (!vr.bounded()) bounded = false;
    // bipolar: bounded by construction (it sits inside conv(S ∪ {0}))
    std::vector<geom::Halfspace> hs2;
    for (const geom::Pt& v : vr.vertices) hs2.push_back({v, 1.0});
    for (const geom::Pt& r : vr.rays) hs2.push_back({r, 0.0});
    for (const geom::Pt& l : vr.lines) {
      hs2.push_back({l, 0.0});
      geom::Pt neg(dim);
      for (std::size_t c = 0; c < dim; ++c) neg[c] = -l[c];
      hs2.push_back({neg, 0.0});
    }
    geom::VRep bp = geom::polyhedron_vr(hs2, dim);
    bipolar_reps[a].kind = RepKind::Polytope;
    for (const geom::Pt& v : bp.vertices)
      bipolar_reps[a].flat.insert(bipolar_reps[a].flat.end(), v.begin(), v.end());
    polar_reps[a].kind = RepKind::Polytope;
    for (const geom::Pt& v : vr.vertices)
      polar_reps[a].flat.insert(polar_reps[a].flat.end(), v.begin(), v.end());
    res.polar_vrep[a] = std::move(vr);
  }
  res.bounded = bounded;
  if (bounded) res.polar = StableSet(alg, dim, std::move(polar_reps));
  res.bipolar = StableSet(alg, dim, std::move(bipolar_reps));
  return res;
}

}  // namespace stable
