#include "stable/l0.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace stable {

namespace {
void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      throw StableError(ErrorKind::ValidationError,
                        std::string(what) + ": values must be finite");
}
}  // namespace

L0Scalar::L0Scalar(MeasureAlgebra alg, std::vector<double> values)
    : alg_(std::move(alg)), v_(std::move(values)) {
  if (v_.size() != alg_.atoms())
    throw StableError(ErrorKind::ValidationError,
                      "scalar needs one value per atom");
  require_finite(v_, "L0Scalar");
}

L0Scalar L0Scalar::constant(MeasureAlgebra alg, double c) {
  std::vector<double> v(alg.atoms(), c);
  return L0Scalar(std::move(alg), std::move(v));
}

L0Scalar L0Scalar::indicator(const Event& e) {
  std::vector<double> v(e.algebra().atoms(), 0.0);
  for (std::size_t a = 0; a < v.size(); ++a)
    if (e.contains(a)) v[a] = 1.0;
  return L0Scalar(e.algebra(), std::move(v));
}

#define STABLE_POINTWISE(op)                                     \
  require_compatible(alg_, o.alg_, "L0Scalar");                  \
  std::vector<double> r(v_.size());                              \
  for (std::size_t a = 0; a < v_.size(); ++a) r[a] = v_[a] op o.v_[a]; \
  return L0Scalar(alg_, std::move(r));

L0Scalar L0Scalar::operator+(const L0Scalar& o) const { STABLE_POINTWISE(+) }
L0Scalar L0Scalar::operator-(const L0Scalar& o) const { STABLE_POINTWISE(-) }
L0Scalar L0Scalar::operator*(const L0Scalar& o) const { STABLE_POINTWISE(*) }
#undef STABLE_POINTWISE

L0Scalar L0Scalar::operator-() const {
  std::vector<double> r(v_.size());
  for (std::size_t a = 0; a < v_.size(); ++a) r[a] = -v_[a];
  return L0Scalar(alg_, std::move(r));
}

L0Scalar L0Scalar::scaled(double c) const {
  std::vector<double> r(v_.size());
  for (std::size_t a = 0; a < v_.size(); ++a) r[a] = c * v_[a];
  return L0Scalar(alg_, std::move(r));
}

L0Scalar L0Scalar::abs() const {
  std::vector<double> r(v_.size());
  for (std::size_t a = 0; a < v_.size(); ++a) r[a] = std::fabs(v_[a]);
  return L0Scalar(alg_, std::move(r));
}

L0Scalar L0Scalar::max(const L0Scalar& o) const {
  require_compatible(alg_, o.alg_, "L0Scalar::max");
  std::vector<double> r(v_.size());
  for (std::size_t a = 0; a < v_.size(); ++a) r[a] = std::max(v_[a], o.v_[a]);
  return L0Scalar(alg_, std::move(r));
}

L0Scalar L0Scalar::min(const L0Scalar& o) const {
  require_compatible(alg_, o.alg_, "L0Scalar::min");
  std::vector<double> r(v_.size());
  for (std::size_t a = 0; a < v_.size(); ++a) r[a] = std::min(v_[a], o.v_[a]);
  return L0Scalar(alg_, std::move(r));
}

bool L0Scalar::operator==(const L0Scalar& o) const {
  return alg_.compatible(o.alg_) && v_ == o.v_;
}

bool L0Scalar::all_le(const L0Scalar& o) const {
  require_compatible(alg_, o.alg_, "L0Scalar::all_le");
  for (std::size_t a = 0; a < v_.size(); ++a)
    if (!(v_[a] <= o.v_[a])) return false;
  return true;
}

bool L0Scalar::all_lt(const L0Scalar& o) const {
  require_compatible(alg_, o.alg_, "L0Scalar::all_lt");
  for (std::size_t a = 0; a < v_.size(); ++a)
    if (!(v_[a] < o.v_[a])) return false;
  return true;
}

bool L0Scalar::strictly_positive() const {
  for (double x : v_)
    if (!(x > 0.0)) return false;
  return true;
}

Event L0Scalar::support() const {
  Event e = Event::empty(alg_);
  for (std::size_t a = 0; a < v_.size(); ++a)
    if (v_[a] != 0.0) e.insert(a);
  return e;
}

Event L0Scalar::where_positive() const {
  Event e = Event::empty(alg_);
  for (std::size_t a = 0; a < v_.size(); ++a)
    if (v_[a] > 0.0) e.insert(a);
  return e;
}

bool L0Scalar::equal_on(const Event& e, const L0Scalar& o) const {
  require_compatible(alg_, o.alg_, "L0Scalar::equal_on");
  for (std::size_t a = 0; a < v_.size(); ++a)
    if (e.contains(a) && v_[a] != o.v_[a]) return false;
  return true;
}

L0Scalar concat_scalars(const Partition& parts, std::span<const L0Scalar> xs) {
  if (xs.size() != parts.size())
    throw StableError(ErrorKind::ArityError,
                      "concat_scalars: need one scalar per partition block");
  const MeasureAlgebra& alg = parts.algebra();
  for (const L0Scalar& x : xs) require_compatible(alg, x.algebra(), "concat_scalars");
  std::vector<double> r(alg.atoms());
  for (std::size_t a = 0; a < alg.atoms(); ++a) r[a] = xs[parts.block_of(a)][a];
  return L0Scalar(alg, std::move(r));
}

L0Scalar ess_sup(std::span<const L0Scalar> xs) {
  if (xs.empty())
    throw StableError(ErrorKind::ArityError, "ess_sup of an empty list");
  L0Scalar r = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) r = r.max(xs[i]);
  return r;
}

L0Scalar ess_inf(std::span<const L0Scalar> xs) {
  if (xs.empty())
    throw StableError(ErrorKind::ArityError, "ess_inf of an empty list");
  L0Scalar r = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) r = r.min(xs[i]);
  return r;
}

L0Scalar conditional_expectation(const L0Scalar& x, const Partition& parts) {
  require_compatible(x.algebra(), parts.algebra(), "conditional_expectation");
  const MeasureAlgebra& alg = x.algebra();
  std::vector<double> mean(parts.size(), 0.0);
  std::vector<double> mass(parts.size(), 0.0);
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    const std::size_t k = parts.block_of(a);
    mean[k] += alg.prob(a) * x[a];
    mass[k] += alg.prob(a);
  }
  std::vector<double> r(alg.atoms());
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    const std::size_t k = parts.block_of(a);
    r[a] = mean[k] / mass[k];
  }
  return L0Scalar(alg, std::move(r));
}

StepNatural::StepNatural(MeasureAlgebra alg, std::vector<std::int64_t> values)
    : alg_(std::move(alg)), v_(std::move(values)) {
  if (v_.size() != alg_.atoms())
    throw StableError(ErrorKind::ValidationError,
                      "step natural needs one value per atom");
  for (std::int64_t n : v_)
    if (n < 1)
      throw StableError(ErrorKind::ValidationError,
                        "step natural values must be >= 1");
}

StepNatural StepNatural::constant(MeasureAlgebra alg, std::int64_t n) {
  std::vector<std::int64_t> v(alg.atoms(), n);
  return StepNatural(std::move(alg), std::move(v));
}

std::int64_t StepNatural::max_value() const {
  return *std::max_element(v_.begin(), v_.end());
}

bool StepNatural::operator==(const StepNatural& o) const {
  return alg_.compatible(o.alg_) && v_ == o.v_;
}

std::vector<std::pair<std::int64_t, Event>> StepNatural::level_sets() const {
  std::vector<std::pair<std::int64_t, Event>> out;
  std::map<std::int64_t, std::size_t> idx;
  for (std::size_t a = 0; a < v_.size(); ++a) {
    auto it = idx.find(v_[a]);
    if (it == idx.end()) {
      it = idx.emplace(v_[a], out.size()).first;
      out.emplace_back(v_[a], Event::empty(alg_));
    }
    out[it->second].second.insert(a);
  }
  return out;
}

Partition StepNatural::level_partition() const {
  std::vector<Event> blocks;
  for (auto& [value, e] : level_sets()) blocks.push_back(e);
  return Partition(alg_, std::move(blocks));
}

StepNatural concat_naturals(const Partition& parts, std::span<const StepNatural> xs) {
  if (xs.size() != parts.size())
    throw StableError(ErrorKind::ArityError,
                      "concat_naturals: need one value per partition block");
  const MeasureAlgebra& alg = parts.algebra();
  for (const StepNatural& x : xs) require_compatible(alg, x.algebra(), "concat_naturals");
  std::vector<std::int64_t> r(alg.atoms());
  for (std::size_t a = 0; a < alg.atoms(); ++a) r[a] = xs[parts.block_of(a)][a];
  return StepNatural(alg, std::move(r));
}

}  // namespace stable
