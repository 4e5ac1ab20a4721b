#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "stable/algebra.hpp"
#include "stable/family.hpp"
#include "stable/l0.hpp"
#include "stable/sets.hpp"
#include "stable/vectors.hpp"

namespace stable {

// A seminorm on (L0)^dim: absolutely homogeneous and subadditive, valued in
// nonnegative L0 scalars. Scaling by a general scalar field only commutes
// with the conditional-Lp kind when the field is measurable with respect to
// the conditioning partition; homogeneity_partition() reports the coarsest
// granularity of scalars that scale out exactly.
class Seminorm {
 public:
  enum class Kind { Weighted, Pairing, CondLp, SupHull, Concat };

  // weights: one nonnegative weight per atom and coordinate (atom-major), or
  // dim values replicated across atoms. exponent: 1, 2, or +infinity.
  static Seminorm weighted(MeasureAlgebra alg, std::size_t dim,
                           std::vector<double> weights, double exponent);
  static Seminorm pairing(L0Vector y);
  // value at omega = E[ ||x||_2^p | block containing omega ]^(1/p)
  static Seminorm conditional_lp(MeasureAlgebra alg, std::size_t dim,
                                 Partition sub, double p);
  static Seminorm sup_hull(std::vector<Seminorm> members);
  static Seminorm concat(Partition parts, std::vector<Seminorm> members);

  Kind kind() const { return data_->kind; }
  const MeasureAlgebra& algebra() const { return data_->alg; }
  std::size_t dim() const { return data_->dim; }

  L0Scalar operator()(const L0Vector& x) const;

  // Coarsest partition such that scalars measurable w.r.t. it satisfy
  // p(r x) = |r| p(x) exactly.
  Partition homogeneity_partition() const;
  // True iff the homogeneity partition is discrete (the seminorm value at an
  // atom depends on the argument at that atom only).
  bool per_atom_local() const;

  // structure accessors (SupHull / Concat)
  const std::vector<Seminorm>& members() const { return data_->members; }
  // Concat partition or CondLp conditioning partition
  const Partition& parts() const;

  double exponent() const { return data_->exponent; }
  const std::vector<double>& weights() const { return data_->weights; }
  const L0Vector& pairing_vector() const;

 private:
  struct Data {
    explicit Data(MeasureAlgebra a) : alg(std::move(a)) {}
    Kind kind = Kind::Weighted;
    MeasureAlgebra alg;
    std::size_t dim = 0;
    std::vector<double> weights;  // Weighted: atoms x dim
    double exponent = 0.0;        // Weighted exponent or CondLp p
    std::vector<L0Vector> y;      // Pairing
    std::vector<Partition> parts; // CondLp sub or Concat partition
    std::vector<Seminorm> members;
  };
  explicit Seminorm(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

// Finest partition coarser than every input; scalars measurable w.r.t. it
// are measurable w.r.t. each input.
Partition finest_common_coarsening(std::span<const Partition> ps);

class SeminormFamily {
 public:
  explicit SeminormFamily(std::vector<Seminorm> members, bool separated = false);
  const std::vector<Seminorm>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const MeasureAlgebra& algebra() const { return members_.front().algebra(); }
  std::size_t dim() const { return members_.front().dim(); }
  bool separated_flag() const { return separated_; }

 private:
  std::vector<Seminorm> members_;
  bool separated_;
};

// Spot-checks of the seminorm axioms: subadditivity on random pairs, absolute
// homogeneity with scalar fields measurable w.r.t. the homogeneity partition.
// Throws ValidationError with a description on the first violation.
void spot_check_seminorm(const Seminorm& p, int samples, std::uint64_t seed);
// Separatedness spot-check: sup over members vanishing at an atom where the
// argument does not. Throws ValidationError on a counterexample.
void spot_check_separated(const SeminormFamily& F, int samples, std::uint64_t seed);

// One neighborhood of a center point in each of the three module topologies.
class Neighborhood {
 public:
  enum class Kind { EpsLambda, L0Ball, StableBall };

  // P( sup_{p in N} p(center - y) < eps ) > 1 - lambda
  static Neighborhood eps_lambda(L0Vector center, std::vector<Seminorm> members,
                                 double eps, double lambda);
  // sup_{p in N} p(center - y) < r at every atom
  static Neighborhood l0_ball(L0Vector center, std::vector<Seminorm> members,
                              L0Scalar radius);
  // blockwise sup over a stable finite family of seminorms, < r per atom
  static Neighborhood stable_ball(L0Vector center, StableFamily<Seminorm> members,
                                  L0Scalar radius);

  Kind kind() const { return kind_; }
  const L0Vector& center() const { return center_; }
  const std::vector<Seminorm>& members() const { return members_; }
  const StableFamily<Seminorm>& stable_members() const { return *stable_members_; }
  double eps() const { return eps_; }
  double lambda() const { return lambda_; }
  const L0Scalar& radius() const { return *radius_; }

  bool contains(const L0Vector& y) const;

 private:
  Neighborhood(Kind kind, L0Vector center)
      : kind_(kind), center_(std::move(center)) {}
  Kind kind_;
  L0Vector center_;
  std::vector<Seminorm> members_;
  std::shared_ptr<const StableFamily<Seminorm>> stable_members_;
  double eps_ = 0.0;
  double lambda_ = 0.0;
  std::shared_ptr<const L0Scalar> radius_;
};

bool contains(const Neighborhood& U, const L0Vector& y);

// Witness that the eps,lambda-ball of a concat-of-sup seminorm q contains an
// eps,lambda-ball built from finitely many base members: N = all members of
// the first m blocks, where m is minimal with P(union of later blocks) < lam/2.
struct EpsLambdaWitness {
  std::vector<Seminorm> members;
  double eps;
  double lam;
  std::size_t blocks_kept;
};
EpsLambdaWitness epslambda_witness(const Seminorm& q, double eps, double lam);

// An L0-ball description handed to / returned by a ball translator.
struct L0BallSpec {
  std::vector<Seminorm> members;
  L0Scalar radius;
};
using BallTranslator = std::function<L0BallSpec(const L0BallSpec&)>;

// Witness that the eps,lambda-ball over the translated member set refines the
// original one: the translated L0-radius is flattened to its level sets, the
// smallest-total-probability tail (< lam/2) is dropped, and the minimum of
// the kept levels becomes the new eps. Requires every seminorm involved to be
// per-atom local (the localization step multiplies the argument by an
// indicator). Throws TranslatorInvalid when sampling finds a vector inside
// the translated ball but outside the original one.
struct RefinementWitness {
  std::vector<Seminorm> members;
  double eps;
  double lam;
  std::size_t levels_kept;
};
RefinementWitness topology_refinement_witness(const std::vector<Seminorm>& n1,
                                              double eps, double lam,
                                              const BallTranslator& translator,
                                              int audit_samples = 1000,
                                              std::uint64_t seed = 0);

// Topological closure of a stable set. Points and polytope data are already
// closed in all three topologies, so this validates shapes and returns the
// set unchanged; its value is the assertion that the three closures agree.
StableSet closure(const StableSet& K, const SeminormFamily& F);

}  // namespace stable
