#include "stable/vectors.hpp"

#include <cmath>

namespace stable {

L0Vector::L0Vector(MeasureAlgebra alg, std::size_t dim, std::vector<double> flat)
    : alg_(std::move(alg)), dim_(dim), xs_(std::move(flat)) {
  if (dim_ == 0)
    throw StableError(ErrorKind::ValidationError, "vector dimension must be >= 1");
  if (xs_.size() != alg_.atoms() * dim_)
    throw StableError(ErrorKind::ValidationError,
                      "vector needs dim values per atom");
  for (double x : xs_)
    if (!std::isfinite(x))
      throw StableError(ErrorKind::ValidationError,
                        "L0Vector: coordinates must be finite");
}

L0Vector L0Vector::constant(MeasureAlgebra alg, std::span<const double> point) {
  std::vector<double> flat(alg.atoms() * point.size());
  for (std::size_t a = 0; a < alg.atoms(); ++a)
    for (std::size_t j = 0; j < point.size(); ++j)
      flat[a * point.size() + j] = point[j];
  return L0Vector(std::move(alg), point.size(), std::move(flat));
}

L0Vector L0Vector::zero(MeasureAlgebra alg, std::size_t dim) {
  std::vector<double> flat(alg.atoms() * dim, 0.0);
  return L0Vector(std::move(alg), dim, std::move(flat));
}

void L0Vector::set_point(std::size_t atom, std::span<const double> p) {
  for (std::size_t j = 0; j < dim_; ++j) xs_[atom * dim_ + j] = p[j];
}

void require_same_shape(const L0Vector& a, const L0Vector& b, const char* what) {
  require_compatible(a.algebra(), b.algebra(), what);
  if (a.dim() != b.dim())
    throw StableError(ErrorKind::ArityError,
                      std::string(what) + ": dimension mismatch");
}

L0Vector L0Vector::operator+(const L0Vector& o) const {
  require_same_shape(*this, o, "L0Vector::+");
  std::vector<double> r(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) r[i] = xs_[i] + o.xs_[i];
  return L0Vector(alg_, dim_, std::move(r));
}

L0Vector L0Vector::operator-(const L0Vector& o) const {
  require_same_shape(*this, o, "L0Vector::-");
  std::vector<double> r(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) r[i] = xs_[i] - o.xs_[i];
  return L0Vector(alg_, dim_, std::move(r));
}

L0Vector L0Vector::operator-() const {
  std::vector<double> r(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) r[i] = -xs_[i];
  return L0Vector(alg_, dim_, std::move(r));
}

L0Vector L0Vector::scaled(double c) const {
  std::vector<double> r(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) r[i] = c * xs_[i];
  return L0Vector(alg_, dim_, std::move(r));
}

L0Vector L0Vector::scaled(const L0Scalar& r) const {
  require_compatible(alg_, r.algebra(), "L0Vector::scaled");
  std::vector<double> out(xs_.size());
  for (std::size_t a = 0; a < alg_.atoms(); ++a)
    for (std::size_t j = 0; j < dim_; ++j)
      out[a * dim_ + j] = r[a] * xs_[a * dim_ + j];
  return L0Vector(alg_, dim_, std::move(out));
}

L0Scalar L0Vector::dot(const L0Vector& o) const {
  require_same_shape(*this, o, "L0Vector::dot");
  std::vector<double> r(alg_.atoms());
  for (std::size_t a = 0; a < alg_.atoms(); ++a) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j)
      s += xs_[a * dim_ + j] * o.xs_[a * dim_ + j];
    r[a] = s;
  }
  return L0Scalar(alg_, std::move(r));
}

L0Scalar L0Vector::norm2() const {
  std::vector<double> r(alg_.atoms());
  for (std::size_t a = 0; a < alg_.atoms(); ++a) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double x = xs_[a * dim_ + j];
      s += x * x;
    }
    r[a] = std::sqrt(s);
  }
  return L0Scalar(alg_, std::move(r));
}

L0Scalar L0Vector::norm_inf() const {
  std::vector<double> r(alg_.atoms());
  for (std::size_t a = 0; a < alg_.atoms(); ++a) {
    double m = 0.0;
    for (std::size_t j = 0; j < dim_; ++j)
      m = std::max(m, std::fabs(xs_[a * dim_ + j]));
    r[a] = m;
  }
  return L0Scalar(alg_, std::move(r));
}

bool L0Vector::operator==(const L0Vector& o) const {
  return alg_.compatible(o.alg_) && dim_ == o.dim_ && xs_ == o.xs_;
}

bool L0Vector::equal_on(const Event& e, const L0Vector& o) const {
  require_same_shape(*this, o, "L0Vector::equal_on");
  for (std::size_t a = 0; a < alg_.atoms(); ++a) {
    if (!e.contains(a)) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (xs_[a * dim_ + j] != o.xs_[a * dim_ + j]) return false;
  }
  return true;
}

L0Vector concat_vectors(const Partition& parts, std::span<const L0Vector> xs) {
  if (xs.size() != parts.size())
    throw StableError(ErrorKind::ArityError,
                      "concat_vectors: need one vector per partition block");
  const MeasureAlgebra& alg = parts.algebra();
  const std::size_t dim = xs.empty() ? 1 : xs[0].dim();
  for (const L0Vector& x : xs) {
    require_compatible(alg, x.algebra(), "concat_vectors");
    if (x.dim() != dim)
      throw StableError(ErrorKind::ArityError, "concat_vectors: dimension mismatch");
  }
  std::vector<double> flat(alg.atoms() * dim);
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    auto p = xs[parts.block_of(a)].point(a);
    for (std::size_t j = 0; j < dim; ++j) flat[a * dim + j] = p[j];
  }
  return L0Vector(alg, dim, std::move(flat));
}

}  // namespace stable
