#pragma once

#include <functional>
#include <span>

#include "stable/family.hpp"
#include "stable/parallel.hpp"
#include "stable/vectors.hpp"

namespace stable {

// Module morphism (L0)^cols -> (L0)^rows: one row-major matrix per atom.
class ModuleMap {
 public:
  ModuleMap(MeasureAlgebra alg, std::size_t rows, std::size_t cols,
            std::vector<double> flat);
  static ModuleMap constant(MeasureAlgebra alg, std::size_t rows, std::size_t cols,
                            std::span<const double> matrix);
  static ModuleMap identity(MeasureAlgebra alg, std::size_t dim);

  const MeasureAlgebra& algebra() const { return alg_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double entry(std::size_t atom, std::size_t i, std::size_t j) const {
    return flat_[(atom * rows_ + i) * cols_ + j];
  }
  double& entry(std::size_t atom, std::size_t i, std::size_t j) {
    return flat_[(atom * rows_ + i) * cols_ + j];
  }
  const std::vector<double>& flat() const { return flat_; }

  L0Vector apply(const L0Vector& x) const;
  // rows == 1 convenience: functional value
  L0Scalar apply_functional(const L0Vector& x) const;

 private:
  MeasureAlgebra alg_;
  std::size_t rows_, cols_;
  std::vector<double> flat_;
};

// Stable basis of a finitely generated submodule of (L0)^dim: canonical
// profile partition with per-block ranks, and one classical basis per block.
// The stable dimension is the count vector of `vectors`.
class StableBasis {
 public:
  StableBasis(std::size_t dim, StableFamily<L0Vector> vectors);

  const MeasureAlgebra& algebra() const { return vectors_.algebra(); }
  std::size_t dim() const { return dim_; }
  const StableFamily<L0Vector>& vectors() const { return vectors_; }
  const std::vector<std::int64_t>& ranks() const { return vectors_.counts(); }

 private:
  std::size_t dim_;
  StableFamily<L0Vector> vectors_;
};

// sum_m r_m x_m blockwise; coeffs and vecs must share their length profile.
L0Vector stable_lincomb(const StableFamily<L0Scalar>& coeffs,
                        const StableFamily<L0Vector>& vecs);

// Per-atom greedy Gaussian elimination over the generators (scaled partial
// pivoting; a pivot counts as nonzero iff |pivot| > 1e-9 * row scale), atoms
// grouped by pivot set into the canonical profile partition.
StableBasis extract_stable_basis(std::span<const L0Vector> generators,
                                 Exec exec = Exec::parallel);

// Basis coefficients of x, blockwise least squares with residual tolerance
// 1e-9; NotInSpan carries the largest event where x leaves the span.
StableFamily<L0Scalar> coordinates(const StableBasis& basis, const L0Vector& x);

// Gauge: per-atom sublinear functional evaluator.
using Gauge = std::function<L0Scalar(const L0Vector&)>;

struct HahnBanachOptions {
  int sublinearity_samples = 1000;  // spot-check of the gauge
  int domination_samples = 200;     // spot-check f <= p on the submodule
  int search_points = 17;           // grid points per axis and scale
  int search_scales = 7;            // radii 2^0 .. 2^(scales-1)
  int refine_rounds = 3;
  unsigned long long seed = 12345;
};

// Extends the functional f (given on the submodule spanned by F) to all of
// (L0)^dim with f_hat <= p, one coordinate direction at a time per atom; the
// extension value is the midpoint of the classical candidate interval
// [sup_y g(y)-p(y-e), inf_y p(y+e)-g(y)], whose bounds are estimated by a
// multiscale grid search over the current domain.
ModuleMap hahn_banach_extend(const Gauge& p, const StableBasis& F,
                             const ModuleMap& f,
                             const HahnBanachOptions& opts = {});

}  // namespace stable
