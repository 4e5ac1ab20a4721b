#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "stable/seminorms.hpp"
#include "stable/sets.hpp"

namespace stable {

// Values of a function sampled on a shared point grid (a Points-rep stable
// set): one value per grid point per atom. +infinity entries are admitted
// only when the table is built with allow_infinite (conjugation tables).
class FunctionTable {
 public:
  FunctionTable(StableSet grid, std::vector<std::vector<double>> values,
                bool allow_infinite = false);
  static FunctionTable tabulate(
      const StableSet& grid,
      const std::function<double(std::size_t atom, std::span<const double> point)>& f);

  const StableSet& grid() const { return grid_; }
  const MeasureAlgebra& algebra() const { return grid_.algebra(); }
  double value(std::size_t atom, std::size_t i) const { return values_[atom][i]; }
  const std::vector<std::vector<double>>& values() const { return values_; }
  bool same_grid(const FunctionTable& o) const { return grid_ == o.grid_; }
  bool all_finite() const;

  // Table as a vector of dimension max-per-atom-count; entries past an
  // atom's own count repeat the last value and carry no information.
  L0Vector to_vector() const;

 private:
  StableSet grid_;
  std::vector<std::vector<double>> values_;
};

// sup-distance on a grid: max over the atom's grid points of |f - g|.
L0Scalar d_infinity(const FunctionTable& f, const FunctionTable& g);

// L0-valued metric on (L0)^dim vectors. The DInfinity kind reads its
// arguments as function tables aligned to a grid (coordinate i = value at
// the atom's i-th grid point; coordinates past the atom's count are padding).
class StableMetric {
 public:
  enum class Kind { Euclidean, SeminormInduced, DInfinity };

  static StableMetric euclidean(MeasureAlgebra alg, std::size_t dim);
  static StableMetric seminorm_induced(Seminorm p);
  static StableMetric d_infinity_on(StableSet grid);

  Kind kind() const { return kind_; }
  const MeasureAlgebra& algebra() const { return alg_; }
  // expected argument dimension (max per-atom grid count for DInfinity)
  std::size_t dim() const { return dim_; }
  // value at an atom depends on the arguments at that atom only
  bool per_atom_local() const;

  L0Scalar operator()(const L0Vector& x, const L0Vector& y) const;

 private:
  StableMetric(Kind k, MeasureAlgebra alg, std::size_t dim)
      : kind_(k), alg_(std::move(alg)), dim_(dim) {}
  Kind kind_;
  MeasureAlgebra alg_;
  std::size_t dim_;
  std::shared_ptr<const Seminorm> seminorm_;
  std::shared_ptr<const StableSet> grid_;
};

// Metric axiom spot-check on random triples: vanishing on the diagonal,
// symmetry (exact), nonnegativity, triangle inequality (tiny relative slack).
// Throws ValidationError on the first violation.
void spot_check_metric(const StableMetric& d, int samples, std::uint64_t seed);

// Uniform-equicontinuity test for a family of tables on one grid: every pair
// of grid points within `modulus` (sup-norm, per atom) must have function
// values within r at that atom, for every table.
bool is_stably_equicontinuous(std::span<const FunctionTable> tables,
                              const L0Scalar& r, double modulus);

}  // namespace stable
