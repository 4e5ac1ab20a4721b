#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stable/algebra.hpp"

namespace stable {

// Measurable scalar: one finite double per atom. Equality, order and lattice
// operations are pointwise and exact (atoms make a.e. statements literal).
class L0Scalar {
 public:
  L0Scalar(MeasureAlgebra alg, std::vector<double> values);
  static L0Scalar constant(MeasureAlgebra alg, double c);
  static L0Scalar zero(MeasureAlgebra alg) { return constant(std::move(alg), 0.0); }
  static L0Scalar one(MeasureAlgebra alg) { return constant(std::move(alg), 1.0); }
  static L0Scalar indicator(const Event& e);

  const MeasureAlgebra& algebra() const { return alg_; }
  std::size_t atoms() const { return v_.size(); }
  double operator[](std::size_t atom) const { return v_[atom]; }
  double& operator[](std::size_t atom) { return v_[atom]; }
  const std::vector<double>& values() const { return v_; }

  L0Scalar operator+(const L0Scalar& o) const;
  L0Scalar operator-(const L0Scalar& o) const;
  L0Scalar operator*(const L0Scalar& o) const;
  L0Scalar operator-() const;
  L0Scalar scaled(double c) const;
  L0Scalar abs() const;
  L0Scalar max(const L0Scalar& o) const;
  L0Scalar min(const L0Scalar& o) const;

  bool operator==(const L0Scalar& o) const;
  bool all_le(const L0Scalar& o) const;   // <= on every atom
  bool all_lt(const L0Scalar& o) const;   // <  on every atom
  bool strictly_positive() const;
  Event support() const;                  // {x != 0}
  Event where_positive() const;           // {x > 0}

  // 1_E x == 1_E y
  bool equal_on(const Event& e, const L0Scalar& o) const;

 private:
  MeasureAlgebra alg_;
  std::vector<double> v_;
};

// x = sum_k 1_{A_k} x_k along a partition; the unique stable paste.
L0Scalar concat_scalars(const Partition& parts, std::span<const L0Scalar> xs);

L0Scalar ess_sup(std::span<const L0Scalar> xs);
L0Scalar ess_inf(std::span<const L0Scalar> xs);

// E[x | partition]: blockwise probability-weighted average, replicated over
// each block.
L0Scalar conditional_expectation(const L0Scalar& x, const Partition& parts);

// Measurable positive integer (value >= 1 on every atom); the index object
// for stable finite enumerations.
class StepNatural {
 public:
  StepNatural(MeasureAlgebra alg, std::vector<std::int64_t> values);
  static StepNatural constant(MeasureAlgebra alg, std::int64_t n);

  const MeasureAlgebra& algebra() const { return alg_; }
  std::size_t atoms() const { return v_.size(); }
  std::int64_t operator[](std::size_t atom) const { return v_[atom]; }
  const std::vector<std::int64_t>& values() const { return v_; }
  std::int64_t max_value() const;
  bool operator==(const StepNatural& o) const;

  // Canonical decomposition n = sum_k 1_{A_k} n_k: level sets with distinct
  // values, blocks ordered by smallest atom index.
  std::vector<std::pair<std::int64_t, Event>> level_sets() const;
  Partition level_partition() const;

 private:
  MeasureAlgebra alg_;
  std::vector<std::int64_t> v_;
};

StepNatural concat_naturals(const Partition& parts, std::span<const StepNatural> xs);

}  // namespace stable
