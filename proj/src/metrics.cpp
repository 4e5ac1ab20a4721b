#include "stable/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace stable {

FunctionTable::FunctionTable(StableSet grid,
                             std::vector<std::vector<double>> values,
                             bool allow_infinite)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_.all_points())
    throw StableError(ErrorKind::ValidationError,
                      "function table needs a Points-rep grid");
  if (values_.size() != grid_.atoms())
    throw StableError(ErrorKind::GridMismatch,
                      "function table needs one value row per atom");
  for (std::size_t a = 0; a < grid_.atoms(); ++a) {
    if (values_[a].size() != grid_.count(a))
      throw StableError(ErrorKind::GridMismatch,
                        "value row length differs from grid count at atom " +
                            std::to_string(a));
    for (double v : values_[a]) {
      if (std::isfinite(v)) continue;
      if (allow_infinite && v == std::numeric_limits<double>::infinity())
        continue;
      throw StableError(ErrorKind::ValidationError,
                        "function table entry must be finite");
    }
  }
}

FunctionTable FunctionTable::tabulate(
    const StableSet& grid,
    const std::function<double(std::size_t, std::span<const double>)>& f) {
  std::vector<std::vector<double>> values(grid.atoms());
  for (std::size_t a = 0; a < grid.atoms(); ++a) {
    values[a].resize(grid.count(a));
    for (std::size_t i = 0; i < grid.count(a); ++i)
      values[a][i] = f(a, grid.point(a, i));
  }
  return FunctionTable(grid, std::move(values));
}

bool FunctionTable::all_finite() const {
  for (const auto& row : values_)
    for (double v : row)
      if (!std::isfinite(v)) return false;
  return true;
}

L0Vector FunctionTable::to_vector() const {
  std::size_t dim = 0;
  for (std::size_t a = 0; a < grid_.atoms(); ++a)
    dim = std::max(dim, grid_.count(a));
  std::vector<double> flat(grid_.atoms() * dim);
  for (std::size_t a = 0; a < grid_.atoms(); ++a)
    for (std::size_t j = 0; j < dim; ++j)
      flat[a * dim + j] = values_[a][std::min(j, grid_.count(a) - 1)];
  return L0Vector(grid_.algebra(), dim, std::move(flat));
}

L0Scalar d_infinity(const FunctionTable& f, const FunctionTable& g) {
  if (!f.same_grid(g))
    throw StableError(ErrorKind::GridMismatch,
                      "d_infinity: tables live on different grids");
  if (!f.all_finite() || !g.all_finite())
    throw StableError(ErrorKind::ValidationError,
                      "d_infinity: tables must be finite");
  const MeasureAlgebra& alg = f.algebra();
  std::vector<double> out(alg.atoms(), 0.0);
  for (std::size_t a = 0; a < alg.atoms(); ++a)
    for (std::size_t i = 0; i < f.grid().count(a); ++i)
      out[a] = std::max(out[a], std::fabs(f.value(a, i) - g.value(a, i)));
  return L0Scalar(alg, std::move(out));
}

StableMetric StableMetric::euclidean(MeasureAlgebra alg, std::size_t dim) {
  if (dim == 0)
    throw StableError(ErrorKind::ValidationError, "euclidean: dim must be >= 1");
  return StableMetric(Kind::Euclidean, std::move(alg), dim);
}

StableMetric StableMetric::seminorm_induced(Seminorm p) {
  StableMetric m(Kind::SeminormInduced, p.algebra(), p.dim());
  m.seminorm_ = std::make_shared<Seminorm>(std::move(p));
  return m;
}

StableMetric StableMetric::d_infinity_on(StableSet grid) {
  if (!grid.all_points())
    throw StableError(ErrorKind::ValidationError,
                      "d_infinity_on: grid must be a Points rep");
  std::size_t dim = 0;
  for (std::size_t a = 0; a < grid.atoms(); ++a)
    dim = std::max(dim, grid.count(a));
  StableMetric m(Kind::DInfinity, grid.algebra(), dim);
  m.grid_ = std::make_shared<StableSet>(std::move(grid));
  return m;
}

bool StableMetric::per_atom_local() const {
  if (kind_ == Kind::SeminormInduced) return seminorm_->per_atom_local();
  return true;
}

L0Scalar StableMetric::operator()(const L0Vector& x, const L0Vector& y) const {
  require_same_shape(x, y, "StableMetric::operator()");
  require_compatible(alg_, x.algebra(), "StableMetric::operator()");
  switch (kind_) {
    case Kind::Euclidean:
      if (x.dim() != dim_)
        throw StableError(ErrorKind::ArityError,
                          "metric: vector dimension mismatch");
      return (x - y).norm2();
    case Kind::SeminormInduced:
      return (*seminorm_)(x - y);
    case Kind::DInfinity: {
      std::vector<double> out(alg_.atoms(), 0.0);
      for (std::size_t a = 0; a < alg_.atoms(); ++a) {
        const std::size_t m = grid_->count(a);
        if (m > x.dim())
          throw StableError(ErrorKind::GridMismatch,
                            "metric: vector shorter than the grid at atom " +
                                std::to_string(a));
        for (std::size_t i = 0; i < m; ++i)
          out[a] = std::max(out[a], std::fabs(x.coord(a, i) - y.coord(a, i)));
      }
      return L0Scalar(alg_, std::move(out));
    }
  }
  throw StableError(ErrorKind::ValidationError, "unreachable metric kind");
}

void spot_check_metric(const StableMetric& d, int samples, std::uint64_t seed) {
  const MeasureAlgebra& alg = d.algebra();
  const std::size_t dim = d.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto rand_vec = [&]() {
    std::vector<double> flat(alg.atoms() * dim);
    for (double& v : flat) v = gauss(rng);
    return L0Vector(alg, dim, std::move(flat));
  };
  for (int t = 0; t < samples; ++t) {
    L0Vector x = rand_vec(), y = rand_vec(), z = rand_vec();
    L0Scalar dxx = d(x, x), dxy = d(x, y), dyx = d(y, x);
    L0Scalar dxz = d(x, z), dyz = d(y, z);
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      if (dxx[a] != 0.0)
        throw StableError(ErrorKind::ValidationError,
                          "metric: d(x,x) != 0 at atom " + std::to_string(a));
      if (dxy[a] != dyx[a])
        throw StableError(ErrorKind::ValidationError,
                          "metric: symmetry fails at atom " + std::to_string(a));
      if (dxy[a] < 0.0)
        throw StableError(ErrorKind::ValidationError,
                          "metric: negative value at atom " + std::to_string(a));
      const double slack = 1e-12 * std::max(1.0, dxy[a] + dyz[a]);
      if (dxz[a] > dxy[a] + dyz[a] + slack)
        throw StableError(ErrorKind::ValidationError,
                          "metric: triangle inequality fails at atom " +
                              std::to_string(a));
    }
  }
}

bool is_stably_equicontinuous(std::span<const FunctionTable> tables,
                              const L0Scalar& r, double modulus) {
  if (tables.empty())
    throw StableError(ErrorKind::ArityError,
                      "is_stably_equicontinuous: no tables");
  if (!(modulus > 0.0) || !std::isfinite(modulus))
    throw StableError(ErrorKind::ValidationError,
                      "is_stably_equicontinuous: modulus must be > 0");
  for (const FunctionTable& t : tables) {
    if (!t.same_grid(tables.front()))
      throw StableError(ErrorKind::GridMismatch,
                        "is_stably_equicontinuous: tables on different grids");
    if (!t.all_finite())
      throw StableError(ErrorKind::ValidationError,
                        "is_stably_equicontinuous: tables must be finite");
  }
  const StableSet& grid = tables.front().grid();
  require_compatible(grid.algebra(), r.algebra(), "is_stably_equicontinuous");
  const double reach = modulus * (1.0 + 1e-12);
  for (std::size_t a = 0; a < grid.atoms(); ++a) {
    const std::size_t m = grid.count(a);
    for (std::size_t i = 0; i < m; ++i) {
      auto p = grid.point(a, i);
      for (std::size_t j = i + 1; j < m; ++j) {
        auto q = grid.point(a, j);
        double dist = 0.0;
        for (std::size_t c = 0; c < grid.dim(); ++c)
          dist = std::max(dist, std::fabs(p[c] - q[c]));
        if (dist > reach) continue;
        for (const FunctionTable& t : tables)
          if (std::fabs(t.value(a, i) - t.value(a, j)) > r[a]) return false;
      }
    }
  }
  return true;
}

}  // namespace stable
