#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "stable/errors.hpp"

namespace stable {

// Finite atomic probability algebra: atoms 0..n-1 with strictly positive
// probabilities summing to 1. Copies share the probability table, so two
// objects are compatible iff they share it or carry identical tables.
class MeasureAlgebra {
 public:
  explicit MeasureAlgebra(std::vector<double> probs);
  static MeasureAlgebra uniform(std::size_t atoms);

  std::size_t atoms() const { return probs_->size(); }
  double prob(std::size_t atom) const { return (*probs_)[atom]; }
  const std::vector<double>& probs() const { return *probs_; }

  bool compatible(const MeasureAlgebra& other) const;

 private:
  std::shared_ptr<const std::vector<double>> probs_;
};

void require_compatible(const MeasureAlgebra& a, const MeasureAlgebra& b,
                        const char* what);

// Measurable set = subset of atoms, stored as a bitmask.
class Event {
 public:
  Event(MeasureAlgebra alg, const std::vector<std::size_t>& atoms);
  static Event empty(MeasureAlgebra alg);
  static Event full(MeasureAlgebra alg);

  const MeasureAlgebra& algebra() const { return alg_; }
  std::size_t atom_count() const { return alg_.atoms(); }

  bool contains(std::size_t atom) const {
    return (words_[atom >> 6] >> (atom & 63)) & 1u;
  }
  void insert(std::size_t atom) { words_[atom >> 6] |= uint64_t{1} << (atom & 63); }
  void erase(std::size_t atom) { words_[atom >> 6] &= ~(uint64_t{1} << (atom & 63)); }

  Event meet(const Event& other) const;
  Event join(const Event& other) const;
  Event complement() const;
  Event minus(const Event& other) const;
  bool leq(const Event& other) const;        // subset
  bool disjoint_from(const Event& other) const;
  bool operator==(const Event& other) const;

  bool is_empty() const;
  bool is_full() const;
  std::size_t count() const;
  double prob() const;
  std::vector<std::size_t> atom_list() const;

 private:
  explicit Event(MeasureAlgebra alg);
  MeasureAlgebra alg_;
  std::vector<std::uint64_t> words_;
};

// Finite measurable partition: disjoint non-empty blocks covering the algebra.
class Partition {
 public:
  Partition(MeasureAlgebra alg, std::vector<Event> blocks);
  static Partition trivial(MeasureAlgebra alg);   // single block
  static Partition discrete(MeasureAlgebra alg);  // one block per atom

  const MeasureAlgebra& algebra() const { return alg_; }
  std::size_t size() const { return blocks_.size(); }
  const Event& block(std::size_t k) const { return blocks_[k]; }
  const std::vector<Event>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t atom) const { return block_of_[atom]; }

  bool refines(const Partition& coarser) const;
  bool operator==(const Partition& other) const;

 private:
  MeasureAlgebra alg_;
  std::vector<Event> blocks_;
  std::vector<std::size_t> block_of_;
};

// Coarsest partition refining all inputs. Blocks are ordered by their
// smallest atom index.
Partition common_refinement(std::span<const Partition> parts);

}  // namespace stable
