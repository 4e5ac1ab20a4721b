#pragma once

#include <span>
#include <vector>

#include "stable/l0.hpp"

namespace stable {

// Element of the free module (L0)^d: one point of R^d per atom, stored
// atom-major.
class L0Vector {
 public:
  L0Vector(MeasureAlgebra alg, std::size_t dim, std::vector<double> flat);
  static L0Vector constant(MeasureAlgebra alg, std::span<const double> point);
  static L0Vector zero(MeasureAlgebra alg, std::size_t dim);

  const MeasureAlgebra& algebra() const { return alg_; }
  std::size_t dim() const { return dim_; }
  std::size_t atoms() const { return alg_.atoms(); }

  double coord(std::size_t atom, std::size_t j) const { return xs_[atom * dim_ + j]; }
  double& coord(std::size_t atom, std::size_t j) { return xs_[atom * dim_ + j]; }
  std::span<const double> point(std::size_t atom) const {
    return {xs_.data() + atom * dim_, dim_};
  }
  void set_point(std::size_t atom, std::span<const double> p);
  const std::vector<double>& flat() const { return xs_; }

  L0Vector operator+(const L0Vector& o) const;
  L0Vector operator-(const L0Vector& o) const;
  L0Vector operator-() const;
  L0Vector scaled(double c) const;
  L0Vector scaled(const L0Scalar& r) const;  // module action, per atom

  L0Scalar dot(const L0Vector& o) const;
  L0Scalar norm2() const;      // Euclidean norm per atom
  L0Scalar norm_inf() const;   // max-abs per atom
  bool operator==(const L0Vector& o) const;
  bool equal_on(const Event& e, const L0Vector& o) const;

 private:
  MeasureAlgebra alg_;
  std::size_t dim_;
  std::vector<double> xs_;
};

L0Vector concat_vectors(const Partition& parts, std::span<const L0Vector> xs);

void require_same_shape(const L0Vector& a, const L0Vector& b, const char* what);

}  // namespace stable
