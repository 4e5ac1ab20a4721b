#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stable/l0.hpp"

namespace stable {

// Stable finite family: a measurable-length list. The length n is a per-atom
// count; atoms are grouped by the canonical decomposition of n (level sets,
// ordered by smallest atom index) and each block carries one classical finite
// list of n_k items. Counts may be zero (empty list on a block); StepNatural
// lengths (>= 1 everywhere) are accepted directly.
template <class T>
class StableFamily {
 public:
  StableFamily(MeasureAlgebra alg, std::vector<std::int64_t> counts,
               std::vector<Event> blocks, std::vector<std::vector<T>> items)
      : alg_(std::move(alg)),
        counts_(std::move(counts)),
        blocks_(std::move(blocks)),
        items_(std::move(items)) {
    if (counts_.size() != alg_.atoms())
      throw StableError(ErrorKind::ValidationError,
                        "family needs one count per atom");
    for (auto c : counts_)
      if (c < 0)
        throw StableError(ErrorKind::ValidationError, "family counts must be >= 0");
    if (blocks_.size() != items_.size())
      throw StableError(ErrorKind::ArityError,
                        "family needs one item list per block");
    std::vector<bool> seen(alg_.atoms(), false);
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      require_compatible(alg_, blocks_[k].algebra(), "StableFamily");
      if (blocks_[k].is_empty())
        throw StableError(ErrorKind::ValidationError, "family block is empty");
      std::int64_t nk = -1;
      for (std::size_t a = 0; a < alg_.atoms(); ++a) {
        if (!blocks_[k].contains(a)) continue;
        if (seen[a])
          throw StableError(ErrorKind::ValidationError, "family blocks overlap");
        seen[a] = true;
        if (nk < 0) nk = counts_[a];
        if (counts_[a] != nk)
          throw StableError(ErrorKind::ValidationError,
                            "family count is not constant on a block");
      }
      if (static_cast<std::int64_t>(items_[k].size()) != nk)
        throw StableError(ErrorKind::ArityError,
                          "family block holds " + std::to_string(items_[k].size()) +
                              " items, expected " + std::to_string(nk));
    }
    for (std::size_t a = 0; a < alg_.atoms(); ++a)
      if (!seen[a])
        throw StableError(ErrorKind::ValidationError,
                          "family blocks do not cover the algebra");
  }

  // Family with the same classical list on every atom.
  static StableFamily constant(MeasureAlgebra alg, std::vector<T> items) {
    std::vector<std::int64_t> counts(alg.atoms(),
                                     static_cast<std::int64_t>(items.size()));
    std::vector<Event> blocks{Event::full(alg)};
    std::vector<std::vector<T>> lists{std::move(items)};
    return StableFamily(std::move(alg), std::move(counts), std::move(blocks),
                        std::move(lists));
  }

  // Build from per-atom counts, fetching each block's items from a callback
  // (block event, index m) -> T.
  template <class Fn>
  static StableFamily from_counts(MeasureAlgebra alg,
                                  std::vector<std::int64_t> counts, Fn&& make) {
    // level sets of the count vector, ordered by smallest atom
    std::vector<std::int64_t> order_seen;
    std::vector<Event> blocks;
    std::vector<std::vector<T>> items;
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      bool found = false;
      for (std::size_t k = 0; k < order_seen.size(); ++k)
        if (order_seen[k] == counts[a]) {
          blocks[k].insert(a);
          found = true;
          break;
        }
      if (!found) {
        order_seen.push_back(counts[a]);
        blocks.push_back(Event::empty(alg));
        blocks.back().insert(a);
        items.emplace_back();
      }
    }
    for (std::size_t k = 0; k < blocks.size(); ++k)
      for (std::int64_t m = 0; m < order_seen[k]; ++m)
        items[k].push_back(make(blocks[k], static_cast<std::size_t>(m)));
    return StableFamily(std::move(alg), std::move(counts), std::move(blocks),
                        std::move(items));
  }

  const MeasureAlgebra& algebra() const { return alg_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t count_at(std::size_t atom) const { return counts_[atom]; }
  std::size_t block_count() const { return blocks_.size(); }
  const Event& block(std::size_t k) const { return blocks_[k]; }
  const std::vector<T>& items(std::size_t k) const { return items_[k]; }
  std::size_t block_of(std::size_t atom) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      if (blocks_[k].contains(atom)) return k;
    return blocks_.size();
  }

  // Length as a StepNatural; requires every count >= 1.
  StepNatural length() const {
    return StepNatural(alg_, counts_);
  }

  template <class U>
  bool same_profile(const StableFamily<U>& o) const {
    return alg_.compatible(o.algebra()) && counts_ == o.counts();
  }

 private:
  MeasureAlgebra alg_;
  std::vector<std::int64_t> counts_;
  std::vector<Event> blocks_;
  std::vector<std::vector<T>> items_;
};

}  // namespace stable
