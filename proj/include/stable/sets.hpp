#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "stable/vectors.hpp"

namespace stable {

enum class RepKind { Points, Polytope };

// One atom's compact set: a finite point list (taken literally) or a vertex
// list (meaning its convex hull). Coordinates stored flat, dim-strided.
struct AtomRep {
  RepKind kind = RepKind::Points;
  std::vector<double> flat;

  std::size_t count(std::size_t dim) const { return flat.size() / dim; }
};

// Product-form compact set: one AtomRep per atom. This is the data of a
// stable set over a finite atomic algebra; every per-atom set must be
// non-empty and polytope vertex lists must have no duplicate vertices.
class StableSet {
 public:
  StableSet(MeasureAlgebra alg, std::size_t dim, std::vector<AtomRep> per_atom);
  // Lenient path for adversarial input checks: skips the non-emptiness,
  // duplicate and finiteness validation. Used by is_stably_compact / the CLI
  // so structural defects are reported, not thrown.
  static StableSet unchecked(MeasureAlgebra alg, std::size_t dim,
                             std::vector<AtomRep> per_atom);

  const MeasureAlgebra& algebra() const { return data_->alg; }
  std::size_t dim() const { return data_->dim; }
  std::size_t atoms() const { return data_->alg.atoms(); }
  const AtomRep& rep(std::size_t atom) const { return data_->per_atom[atom]; }
  std::size_t count(std::size_t atom) const { return data_->per_atom[atom].count(data_->dim); }
  std::span<const double> point(std::size_t atom, std::size_t k) const {
    return {data_->per_atom[atom].flat.data() + k * data_->dim, data_->dim};
  }
  bool all_points() const;
  bool all_polytopes() const;
  bool operator==(const StableSet& o) const;

  // Number of measurable selections (product of per-atom counts); nullopt on
  // 64-bit overflow. Points reps only.
  std::optional<std::uint64_t> selector_count() const;
  // Enumerates every selection x (x(atom) in K_atom) in odometer order: the
  // last atom's index moves fastest, per-atom points in listed order.
  // NotEnumerable for polytope reps.
  void for_each_selector(const std::function<void(const L0Vector&)>& fn) const;
  std::vector<L0Vector> selector_list(std::uint64_t limit = 1u << 20) const;

 private:
  struct Data {
    MeasureAlgebra alg;
    std::size_t dim;
    std::vector<AtomRep> per_atom;
    Data(MeasureAlgebra a, std::size_t d, std::vector<AtomRep> p)
        : alg(std::move(a)), dim(d), per_atom(std::move(p)) {}
  };
  explicit StableSet(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

// S is closed under concatenations iff it equals the product of its per-atom
// value sets. Duplicates in the list are ignored.
bool is_stable(std::span<const L0Vector> s);

// Smallest stable superset: the product of per-atom value sets, each in the
// order of first appearance.
StableSet stable_hull(std::span<const L0Vector> s);

// Blockwise paste of sets along a partition.
StableSet concat_sets(const Partition& parts, std::span<const StableSet> ks);

// Selection correspondence, inverse direction: a stable finite set IS the
// selector set of its per-atom value map. Throws NotStable otherwise.
StableSet extract_setvalued_map(std::span<const L0Vector> s);

struct BoundedCheck {
  bool ok = false;
  std::optional<L0Scalar> radius;          // per-atom max Euclidean norm
  std::optional<std::size_t> bad_atom;     // first atom with empty/NaN data
  std::string defect;
};

// Closedness is structural for finite reps; this computes the radius
// certificate and rejects empty or non-finite per-atom data.
BoundedCheck check_closed_bounded(const StableSet& k);

// Per-atom membership: x(atom) within tol of a listed point (Points rep) or
// of the convex hull (Polytope rep) at every atom.
bool set_contains(const StableSet& k, const L0Vector& x, double tol = 1e-12);

}  // namespace stable
