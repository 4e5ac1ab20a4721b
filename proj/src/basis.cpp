#include "stable/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace stable {

ModuleMap::ModuleMap(MeasureAlgebra alg, std::size_t rows, std::size_t cols,
                     std::vector<double> flat)
    : alg_(std::move(alg)), rows_(rows), cols_(cols), flat_(std::move(flat)) {
  if (rows_ == 0 || cols_ == 0)
    throw StableError(ErrorKind::ValidationError, "module map needs rows, cols >= 1");
  if (flat_.size() != alg_.atoms() * rows_ * cols_)
    throw StableError(ErrorKind::ValidationError,
                      "module map needs rows*cols entries per atom");
  for (double x : flat_)
    if (!std::isfinite(x))
      throw StableError(ErrorKind::ValidationError,
                        "module map entries must be finite");
}

ModuleMap ModuleMap::constant(MeasureAlgebra alg, std::size_t rows, std::size_t cols,
                              std::span<const double> matrix) {
  std::vector<double> flat(alg.atoms() * rows * cols);
  for (std::size_t a = 0; a < alg.atoms(); ++a)
    std::copy(matrix.begin(), matrix.end(), flat.begin() + a * rows * cols);
  return ModuleMap(std::move(alg), rows, cols, std::move(flat));
}

ModuleMap ModuleMap::identity(MeasureAlgebra alg, std::size_t dim) {
  std::vector<double> m(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = 1.0;
  return constant(std::move(alg), dim, dim, m);
}

L0Vector ModuleMap::apply(const L0Vector& x) const {
  require_compatible(alg_, x.algebra(), "ModuleMap::apply");
  if (x.dim() != cols_)
    throw StableError(ErrorKind::ArityError,
                      "ModuleMap::apply: vector dimension does not match cols");
  std::vector<double> out(alg_.atoms() * rows_, 0.0);
  for (std::size_t a = 0; a < alg_.atoms(); ++a) {
    auto p = x.point(a);
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += entry(a, i, j) * p[j];
      out[a * rows_ + i] = s;
    }
  }
  return L0Vector(alg_, rows_, std::move(out));
}

L0Scalar ModuleMap::apply_functional(const L0Vector& x) const {
  if (rows_ != 1)
    throw StableError(ErrorKind::ArityError,
                      "apply_functional needs a single-row map");
  L0Vector v = apply(x);
  std::vector<double> s(alg_.atoms());
  for (std::size_t a = 0; a < alg_.atoms(); ++a) s[a] = v.coord(a, 0);
  return L0Scalar(alg_, std::move(s));
}

StableBasis::StableBasis(std::size_t dim, StableFamily<L0Vector> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  for (std::size_t k = 0; k < vectors_.block_count(); ++k)
    for (const L0Vector& v : vectors_.items(k)) {
      require_compatible(vectors_.algebra(), v.algebra(), "StableBasis");
      if (v.dim() != dim_)
        throw StableError(ErrorKind::ArityError,
                          "basis vector dimension mismatch");
    }
}

L0Vector stable_lincomb(const StableFamily<L0Scalar>& coeffs,
                        const StableFamily<L0Vector>& vecs) {
  if (!coeffs.same_profile(vecs))
    throw StableError(ErrorKind::ArityError,
                      "stable_lincomb: coefficient and vector families must "
                      "share one length");
  const MeasureAlgebra& alg = vecs.algebra();
  std::size_t dim = 1;
  for (std::size_t k = 0; k < vecs.block_count(); ++k)
    if (!vecs.items(k).empty()) dim = vecs.items(k)[0].dim();
  std::vector<double> out(alg.atoms() * dim, 0.0);
  for (std::size_t k = 0; k < vecs.block_count(); ++k) {
    const auto& rs = coeffs.items(k);
    const auto& xs = vecs.items(k);
    const Event& blk = vecs.block(k);
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      if (!blk.contains(a)) continue;
      for (std::size_t m = 0; m < xs.size(); ++m) {
        const double r = rs[m][a];
        auto p = xs[m].point(a);
        for (std::size_t j = 0; j < dim; ++j) out[a * dim + j] += r * p[j];
      }
    }
  }
  return L0Vector(alg, dim, std::move(out));
}

namespace {

// Greedy per-atom pivot-column selection. Returns the chosen generator
// indices for one atom.
std::vector<std::size_t> pivot_columns(std::span<const L0Vector> gens,
                                       std::size_t atom, std::size_t dim) {
  const std::size_t g = gens.size();
  // working matrix: dim rows, g columns
  std::vector<double> m(dim * g);
  std::vector<double> row_scale(dim, 0.0);
  for (std::size_t j = 0; j < g; ++j) {
    auto p = gens[j].point(atom);
    for (std::size_t i = 0; i < dim; ++i) {
      m[i * g + j] = p[i];
      row_scale[i] = std::max(row_scale[i], std::fabs(p[i]));
    }
  }
  std::vector<bool> row_used(dim, false);
  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < g && chosen.size() < dim; ++j) {
    // pick the pivot row maximizing |entry| / row_scale, then keep the
    // column iff |pivot| clears the relative threshold
    std::size_t pr = dim;
    double best = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (row_used[i] || row_scale[i] == 0.0) continue;
      const double rel = std::fabs(m[i * g + j]) / row_scale[i];
      if (rel > best) {
        best = rel;
        pr = i;
      }
    }
    if (pr == dim || std::fabs(m[pr * g + j]) <= 1e-9 * row_scale[pr]) continue;
    row_used[pr] = true;
    chosen.push_back(j);
    // eliminate this column from the unused rows
    const double piv = m[pr * g + j];
    for (std::size_t i = 0; i < dim; ++i) {
      if (row_used[i]) continue;
      const double f = m[i * g + j] / piv;
      if (f == 0.0) continue;
      for (std::size_t jj = j; jj < g; ++jj) m[i * g + jj] -= f * m[pr * g + jj];
    }
  }
  return chosen;
}

}  // namespace

StableBasis extract_stable_basis(std::span<const L0Vector> generators, Exec exec) {
  if (generators.empty())
    throw StableError(ErrorKind::ArityError,
                      "extract_stable_basis: no generators");
  for (const L0Vector& v : generators)
    require_same_shape(generators[0], v, "extract_stable_basis");
  const MeasureAlgebra& alg = generators[0].algebra();
  const std::size_t dim = generators[0].dim();
  const std::size_t n = alg.atoms();

  std::vector<std::vector<std::size_t>> pivots(n);
  for_each_index(exec, n, [&](std::size_t a) {
    pivots[a] = pivot_columns(generators, a, dim);
  });

  // group atoms by pivot set, blocks in order of smallest atom
  std::map<std::vector<std::size_t>, std::size_t> group;
  std::vector<Event> blocks;
  std::vector<std::vector<std::size_t>> block_pivots;
  std::vector<std::int64_t> counts(n);
  for (std::size_t a = 0; a < n; ++a) {
    counts[a] = static_cast<std::int64_t>(pivots[a].size());
    auto it = group.find(pivots[a]);
    if (it == group.end()) {
      it = group.emplace(pivots[a], blocks.size()).first;
      blocks.push_back(Event::empty(alg));
      block_pivots.push_back(pivots[a]);
    }
    blocks[it->second].insert(a);
  }
  // order blocks by smallest atom index for a canonical profile
  std::vector<std::size_t> order(blocks.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return blocks[x].atom_list().front() < blocks[y].atom_list().front();
  });
  std::vector<Event> obs;
  std::vector<std::vector<L0Vector>> items;
  for (std::size_t k : order) {
    obs.push_back(blocks[k]);
    std::vector<L0Vector> vs;
    for (std::size_t j : block_pivots[k]) vs.push_back(generators[j]);
    items.push_back(std::move(vs));
  }
  StableFamily<L0Vector> fam(alg, std::move(counts), std::move(obs), std::move(items));
  return StableBasis(dim, std::move(fam));
}

namespace {

// Solve the small least-squares V r = x via normal equations; V has full
// column rank by construction of the basis.
bool solve_coords(const std::vector<double>& v, std::size_t dim, std::size_t nk,
                  std::span<const double> x, std::vector<double>& r_out,
                  double& residual) {
  // gram = V^T V (nk x nk), rhs = V^T x
  std::vector<double> gram(nk * nk, 0.0), rhs(nk, 0.0);
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = 0; j < nk; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < dim; ++c) s += v[c * nk + i] * v[c * nk + j];
      gram[i * nk + j] = s;
    }
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) s += v[c * nk + i] * x[c];
    rhs[i] = s;
  }
  // gaussian elimination with partial pivoting
  std::vector<std::size_t> perm(nk);
  for (std::size_t i = 0; i < nk; ++i) perm[i] = i;
  for (std::size_t col = 0; col < nk; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < nk; ++i)
      if (std::fabs(gram[i * nk + col]) > std::fabs(gram[piv * nk + col])) piv = i;
    if (piv != col) {
      for (std::size_t j = 0; j < nk; ++j)
        std::swap(gram[col * nk + j], gram[piv * nk + j]);
      std::swap(rhs[col], rhs[piv]);
    }
    const double d = gram[col * nk + col];
    if (d == 0.0) return false;
    for (std::size_t i = col + 1; i < nk; ++i) {
      const double f = gram[i * nk + col] / d;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < nk; ++j) gram[i * nk + j] -= f * gram[col * nk + j];
      rhs[i] -= f * rhs[col];
    }
  }
  r_out.assign(nk, 0.0);
  for (std::size_t i = nk; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < nk; ++j) s -= gram[i * nk + j] * r_out[j];
    r_out[i] = s / gram[i * nk + i];
  }
  residual = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    double s = x[c];
    for (std::size_t i = 0; i < nk; ++i) s -= v[c * nk + i] * r_out[i];
    residual = std::max(residual, std::fabs(s));
  }
  return true;
}

}  // namespace

StableFamily<L0Scalar> coordinates(const StableBasis& basis, const L0Vector& x) {
  require_compatible(basis.algebra(), x.algebra(), "coordinates");
  if (x.dim() != basis.dim())
    throw StableError(ErrorKind::ArityError, "coordinates: dimension mismatch");
  const MeasureAlgebra& alg = basis.algebra();
  const std::size_t dim = basis.dim();
  const auto& fam = basis.vectors();

  std::vector<std::vector<std::vector<double>>> coef(fam.block_count());
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < fam.block_count(); ++k) {
    const auto& vs = fam.items(k);
    const std::size_t nk = vs.size();
    coef[k].assign(nk, std::vector<double>(alg.atoms(), 0.0));
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      if (!fam.block(k).contains(a)) continue;
      if (nk == 0) {
        // empty basis spans only 0
        double m = 0.0;
        for (std::size_t c = 0; c < dim; ++c)
          m = std::max(m, std::fabs(x.coord(a, c)));
        if (m > 1e-9) bad.push_back(a);
        continue;
      }
      std::vector<double> v(dim * nk);
      for (std::size_t m = 0; m < nk; ++m) {
        auto p = vs[m].point(a);
        for (std::size_t c = 0; c < dim; ++c) v[c * nk + m] = p[c];
      }
      std::vector<double> r;
      double residual = 0.0;
      if (!solve_coords(v, dim, nk, x.point(a), r, residual) || residual > 1e-9) {
        bad.push_back(a);
        continue;
      }
      for (std::size_t m = 0; m < nk; ++m) coef[k][m][a] = r[m];
    }
  }
  if (!bad.empty())
    throw EventError(ErrorKind::NotInSpan,
                     "coordinates: vector leaves the span on " +
                         std::to_string(bad.size()) + " atom(s)",
                     bad);
  std::vector<Event> blocks;
  std::vector<std::vector<L0Scalar>> items;
  for (std::size_t k = 0; k < fam.block_count(); ++k) {
    blocks.push_back(fam.block(k));
    std::vector<L0Scalar> rs;
    for (auto& values : coef[k]) rs.emplace_back(alg, std::move(values));
    items.push_back(std::move(rs));
  }
  return StableFamily<L0Scalar>(alg, fam.counts(), std::move(blocks), std::move(items));
}

namespace {

double eval_gauge_at(const Gauge& p, const MeasureAlgebra& alg, std::size_t atom,
                     std::span<const double> point) {
  L0Vector v = L0Vector::constant(alg, point);
  return p(v)[atom];
}

// Estimate sup_{y in span(basis)} (gamma  . c - p(Vc - e)) and the matching
// inf by a multiscale grid search over the coefficients c, then local refine.
struct IntervalEstimate {
  double lo;  // sup of g(y) - p(y - e)
  double hi;  // inf of p(y + e) - g(y)
};

IntervalEstimate extension_interval(
    const Gauge& p, const MeasureAlgebra& alg, std::size_t atom,
    const std::vector<std::vector<double>>& basis,  // current domain directions
    const std::vector<double>& gamma, const std::vector<double>& e,
    const HahnBanachOptions& opts) {
  const std::size_t dim = e.size();
  const std::size_t k = basis.size();
  std::vector<double> y(dim), plus(dim), minus(dim);

  auto eval_pair = [&](const std::vector<double>& c, double& lo, double& hi) {
    double g = 0.0;
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      g += gamma[i] * c[i];
      for (std::size_t j = 0; j < dim; ++j) y[j] += c[i] * basis[i][j];
    }
    for (std::size_t j = 0; j < dim; ++j) {
      minus[j] = y[j] - e[j];
      plus[j] = y[j] + e[j];
    }
    lo = std::max(lo, g - eval_gauge_at(p, alg, atom, minus));
    hi = std::min(hi, eval_gauge_at(p, alg, atom, plus) - g);
  };

  double lo = -1e300, hi = 1e300;
  std::vector<double> c(k, 0.0);
  eval_pair(c, lo, hi);
  if (k == 0) return {lo, hi};

  std::vector<double> best_lo = c, best_hi = c;
  const int pts = std::max(3, opts.search_points);
  // coarse pass over growing scales
  for (int s = 0; s < opts.search_scales; ++s) {
    const double radius = std::ldexp(1.0, s);  // 1, 2, 4, ...
    std::vector<int> idx(k, 0);
    for (;;) {
      for (std::size_t i = 0; i < k; ++i)
        c[i] = radius * (2.0 * idx[i] / (pts - 1) - 1.0);
      double plo = lo, phi = hi;
      eval_pair(c, lo, hi);
      if (lo > plo) best_lo = c;
      if (hi < phi) best_hi = c;
      std::size_t i = 0;
      while (i < k && ++idx[i] == pts) idx[i++] = 0;
      if (i == k) break;
    }
  }
  // local refinement around the best coefficients
  for (int round = 0; round < opts.refine_rounds; ++round) {
    const double step = std::ldexp(1.0, opts.search_scales - 1) /
                        std::pow(double(pts - 1), round + 1) * 2.0;
    for (int which = 0; which < 2; ++which) {
      std::vector<double>& base = which == 0 ? best_lo : best_hi;
      std::vector<double> centre = base;
      std::vector<int> idx(k, 0);
      for (;;) {
        for (std::size_t i = 0; i < k; ++i)
          c[i] = centre[i] + step * (2.0 * idx[i] / (pts - 1) - 1.0);
        double plo = lo, phi = hi;
        eval_pair(c, lo, hi);
        if (which == 0 && lo > plo) base = c;
        if (which == 1 && hi < phi) base = c;
        std::size_t i = 0;
        while (i < k && ++idx[i] == pts) idx[i++] = 0;
        if (i == k) break;
      }
    }
  }
  return {lo, hi};
}

}  // namespace

ModuleMap hahn_banach_extend(const Gauge& p, const StableBasis& F,
                             const ModuleMap& f, const HahnBanachOptions& opts) {
  const MeasureAlgebra& alg = F.algebra();
  require_compatible(alg, f.algebra(), "hahn_banach_extend");
  const std::size_t dim = F.dim();
  if (f.rows() != 1 || f.cols() != dim)
    throw StableError(ErrorKind::ArityError,
                      "hahn_banach_extend: f must be a functional on (L0)^dim");

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_vector = [&]() {
    std::vector<double> flat(alg.atoms() * dim);
    for (double& x : flat) x = gauss(rng);
    return L0Vector(alg, dim, std::move(flat));
  };

  // sublinearity spot-check: subadditivity and positive homogeneity
  for (int t = 0; t < opts.sublinearity_samples; ++t) {
    L0Vector x = random_vector(), y = random_vector();
    L0Scalar lhs = p(x + y);
    L0Scalar rhs = p(x) + p(y);
    const double c = std::exp(gauss(rng));
    L0Scalar hom_l = p(x.scaled(c));
    L0Scalar hom_r = p(x).scaled(c);
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      const double scale = std::max({1.0, std::fabs(rhs[a]), std::fabs(hom_r[a])});
      if (lhs[a] > rhs[a] + 1e-9 * scale ||
          std::fabs(hom_l[a] - hom_r[a]) > 1e-9 * scale)
        throw StableError(ErrorKind::ValidationError,
                          "hahn_banach_extend: gauge failed the sublinearity "
                          "spot-check");
    }
  }

  // domination spot-check on the submodule: f(x) <= p(x) for sampled
  // combinations of basis vectors
  const auto& fam = F.vectors();
  for (int t = 0; t < opts.domination_samples; ++t) {
    std::vector<double> flat(alg.atoms() * dim, 0.0);
    for (std::size_t k = 0; k < fam.block_count(); ++k) {
      const auto& vs = fam.items(k);
      for (const L0Vector& v : vs) {
        const double c = gauss(rng);
        for (std::size_t a = 0; a < alg.atoms(); ++a) {
          if (!fam.block(k).contains(a)) continue;
          auto pt = v.point(a);
          for (std::size_t j = 0; j < dim; ++j) flat[a * dim + j] += c * pt[j];
        }
      }
    }
    L0Vector x(alg, dim, std::move(flat));
    L0Scalar fx = f.apply_functional(x);
    L0Scalar px = p(x);
    for (std::size_t a = 0; a < alg.atoms(); ++a)
      if (fx[a] > px[a] + 1e-9 * std::max(1.0, std::fabs(px[a])))
        throw StableError(ErrorKind::DominationViolated,
                          "hahn_banach_extend: f exceeds the gauge on the "
                          "submodule (atom " + std::to_string(a) + ")");
  }

  // per-atom extension
  std::vector<double> out(alg.atoms() * dim, 0.0);
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    const std::size_t k0 = fam.block_of(a);
    std::vector<std::vector<double>> dirs;  // current domain directions
    std::vector<double> gamma;              // functional values on dirs
    for (const L0Vector& v : fam.items(k0)) {
      auto pt = v.point(a);
      dirs.emplace_back(pt.begin(), pt.end());
      double s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) s += f.entry(a, 0, j) * pt[j];
      gamma.push_back(s);
    }

    // orthonormal shadow of dirs to test membership of new directions
    auto residual_of = [&](const std::vector<double>& e,
                           const std::vector<std::vector<double>>& basis) {
      std::vector<double> r = e;
      std::vector<std::vector<double>> q;
      for (const auto& b : basis) {
        std::vector<double> v = b;
        for (const auto& u : q) {
          double c = 0.0;
          for (std::size_t j = 0; j < dim; ++j) c += v[j] * u[j];
          for (std::size_t j = 0; j < dim; ++j) v[j] -= c * u[j];
        }
        double nn = 0.0;
        for (double x : v) nn += x * x;
        nn = std::sqrt(nn);
        if (nn > 1e-12) {
          for (double& x : v) x /= nn;
          q.push_back(std::move(v));
        }
      }
      for (const auto& u : q) {
        double c = 0.0;
        for (std::size_t j = 0; j < dim; ++j) c += r[j] * u[j];
        for (std::size_t j = 0; j < dim; ++j) r[j] -= c * u[j];
      }
      double nn = 0.0;
      for (double x : r) nn += x * x;
      return std::sqrt(nn);
    };

    while (dirs.size() < dim) {
      std::vector<double> e(dim, 0.0);
      bool found = false;
      for (std::size_t j = 0; j < dim && !found; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        if (residual_of(e, dirs) > 1e-9) found = true;
      }
      if (!found) break;  // numerically full already
      IntervalEstimate iv =
          extension_interval(p, alg, a, dirs, gamma, e, opts);
      if (iv.lo > iv.hi)
        throw StableError(ErrorKind::DominationViolated,
                          "hahn_banach_extend: empty extension interval (atom " +
                              std::to_string(a) + ")");
      const double alpha = iv.lo + 0.5 * (iv.hi - iv.lo);
      dirs.push_back(e);
      gamma.push_back(alpha);
    }

    // assemble the row: solve g . dirs_i = gamma_i
    const std::size_t n = dirs.size();
    std::vector<double> m(n * dim), rhs = gamma, g(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < dim; ++j) m[i * dim + j] = dirs[i][j];
    // square solve via elimination on [dirs; e_extra] -- dirs spans R^dim here
    // (n == dim unless the basis was degenerate; missing directions get 0)
    std::vector<std::size_t> cols(dim);
    for (std::size_t j = 0; j < dim; ++j) cols[j] = j;
    std::vector<std::vector<double>> rowsm(n, std::vector<double>(dim + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < dim; ++j) rowsm[i][j] = m[i * dim + j];
      rowsm[i][dim] = rhs[i];
    }
    // gaussian elimination (n <= dim rows)
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < dim && r < n; ++c) {
      std::size_t piv = r;
      for (std::size_t i = r + 1; i < n; ++i)
        if (std::fabs(rowsm[i][c]) > std::fabs(rowsm[piv][c])) piv = i;
      if (std::fabs(rowsm[piv][c]) < 1e-12) continue;
      std::swap(rowsm[piv], rowsm[r]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == r) continue;
        const double fct = rowsm[i][c] / rowsm[r][c];
        if (fct == 0.0) continue;
        for (std::size_t j = c; j <= dim; ++j) rowsm[i][j] -= fct * rowsm[r][j];
      }
      pivot_col.push_back(c);
      ++r;
    }
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      g[pivot_col[i]] = rowsm[i][dim] / rowsm[i][pivot_col[i]];
    for (std::size_t j = 0; j < dim; ++j) out[a * dim + j] = g[j];
  }
  return ModuleMap(alg, 1, dim, std::move(out));
}

}  // namespace stable
