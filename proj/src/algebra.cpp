#include "stable/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace stable {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::NotEnumerable: return "NotEnumerable";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::DominationViolated: return "DominationViolated";
    case ErrorKind::TranslatorInvalid: return "TranslatorInvalid";
    case ErrorKind::RadiusNotStrictlyPositive: return "RadiusNotStrictlyPositive";
    case ErrorKind::ConstructionImpossible: return "ConstructionImpossible";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::NotDisjoint: return "NotDisjoint";
    case ErrorKind::RateNotContractive: return "RateNotContractive";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::ValidationError;
}

MeasureAlgebra::MeasureAlgebra(std::vector<double> probs) {
  if (probs.empty())
    throw StableError(ErrorKind::ValidationError, "algebra needs at least one atom");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw StableError(ErrorKind::ValidationError,
                        "atom probabilities must be strictly positive");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw StableError(ErrorKind::ValidationError,
                      "atom probabilities must sum to 1 (within 1e-12), got " +
                          std::to_string(sum));
  probs_ = std::make_shared<const std::vector<double>>(std::move(probs));
}

MeasureAlgebra MeasureAlgebra::uniform(std::size_t atoms) {
  if (atoms == 0)
    throw StableError(ErrorKind::ValidationError, "algebra needs at least one atom");
  // n * (1/n) can miss 1 by rounding for non-dyadic n; renormalize the tail
  // atom so the sum is exact.
  std::vector<double> p(atoms, 1.0 / static_cast<double>(atoms));
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < atoms; ++i) sum += p[i];
  p[atoms - 1] = 1.0 - sum;
  return MeasureAlgebra(std::move(p));
}

bool MeasureAlgebra::compatible(const MeasureAlgebra& other) const {
  if (probs_ == other.probs_) return true;
  return *probs_ == *other.probs_;
}

void require_compatible(const MeasureAlgebra& a, const MeasureAlgebra& b,
                        const char* what) {
  if (!a.compatible(b))
    throw StableError(ErrorKind::AlgebraMismatch,
                      std::string(what) + ": operands live on different algebras");
}

Event::Event(MeasureAlgebra alg)
    : alg_(std::move(alg)), words_((alg_.atoms() + 63) / 64, 0) {}

Event::Event(MeasureAlgebra alg, const std::vector<std::size_t>& atoms)
    : Event(std::move(alg)) {
  for (std::size_t a : atoms) {
    if (a >= alg_.atoms())
      throw StableError(ErrorKind::ValidationError,
                        "event atom index out of range: " + std::to_string(a));
    insert(a);
  }
}

Event Event::empty(MeasureAlgebra alg) { return Event(std::move(alg)); }

Event Event::full(MeasureAlgebra alg) {
  Event e(std::move(alg));
  const std::size_t n = e.alg_.atoms();
  for (std::size_t w = 0; w < e.words_.size(); ++w) e.words_[w] = ~uint64_t{0};
  // clear bits past the last atom
  const std::size_t rem = n & 63;
  if (rem != 0) e.words_.back() &= (uint64_t{1} << rem) - 1;
  return e;
}

Event Event::meet(const Event& other) const {
  require_compatible(alg_, other.alg_, "Event::meet");
  Event r(*this);
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= other.words_[w];
  return r;
}

Event Event::join(const Event& other) const {
  require_compatible(alg_, other.alg_, "Event::join");
  Event r(*this);
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] |= other.words_[w];
  return r;
}

Event Event::complement() const {
  Event r = Event::full(alg_);
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= ~words_[w];
  return r;
}

Event Event::minus(const Event& other) const {
  require_compatible(alg_, other.alg_, "Event::minus");
  Event r(*this);
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= ~other.words_[w];
  return r;
}

bool Event::leq(const Event& other) const {
  require_compatible(alg_, other.alg_, "Event::leq");
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

bool Event::disjoint_from(const Event& other) const {
  require_compatible(alg_, other.alg_, "Event::disjoint_from");
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & other.words_[w]) return false;
  return true;
}

bool Event::operator==(const Event& other) const {
  return alg_.compatible(other.alg_) && words_ == other.words_;
}

bool Event::is_empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

bool Event::is_full() const { return count() == alg_.atoms(); }

std::size_t Event::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

double Event::prob() const {
  double s = 0.0;
  for (std::size_t a = 0; a < alg_.atoms(); ++a)
    if (contains(a)) s += alg_.prob(a);
  return s;
}

std::vector<std::size_t> Event::atom_list() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t a = 0; a < alg_.atoms(); ++a)
    if (contains(a)) out.push_back(a);
  return out;
}

Partition::Partition(MeasureAlgebra alg, std::vector<Event> blocks)
    : alg_(std::move(alg)), blocks_(std::move(blocks)) {
  if (blocks_.empty())
    throw StableError(ErrorKind::ValidationError, "partition needs at least one block");
  block_of_.assign(alg_.atoms(), blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    require_compatible(alg_, blocks_[k].algebra(), "Partition");
    if (blocks_[k].is_empty())
      throw StableError(ErrorKind::ValidationError,
                        "partition block " + std::to_string(k) + " is empty");
    for (std::size_t a = 0; a < alg_.atoms(); ++a) {
      if (!blocks_[k].contains(a)) continue;
      if (block_of_[a] != blocks_.size())
        throw StableError(ErrorKind::ValidationError,
                          "partition blocks overlap at atom " + std::to_string(a));
      block_of_[a] = k;
    }
  }
  for (std::size_t a = 0; a < alg_.atoms(); ++a)
    if (block_of_[a] == blocks_.size())
      throw StableError(ErrorKind::ValidationError,
                        "partition does not cover atom " + std::to_string(a));
}

Partition Partition::trivial(MeasureAlgebra alg) {
  std::vector<Event> b{Event::full(alg)};
  return Partition(std::move(alg), std::move(b));
}

Partition Partition::discrete(MeasureAlgebra alg) {
  std::vector<Event> b;
  b.reserve(alg.atoms());
  for (std::size_t a = 0; a < alg.atoms(); ++a) b.push_back(Event(alg, {a}));
  return Partition(std::move(alg), std::move(b));
}

bool Partition::refines(const Partition& coarser) const {
  require_compatible(alg_, coarser.alg_, "Partition::refines");
  for (const Event& mine : blocks_) {
    bool inside_some = false;
    for (const Event& big : coarser.blocks_)
      if (mine.leq(big)) {
        inside_some = true;
        break;
      }
    if (!inside_some) return false;
  }
  return true;
}

bool Partition::operator==(const Partition& other) const {
  if (!alg_.compatible(other.alg_) || blocks_.size() != other.blocks_.size())
    return false;
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (!(blocks_[k] == other.blocks_[k])) return false;
  return true;
}

Partition common_refinement(std::span<const Partition> parts) {
  if (parts.empty())
    throw StableError(ErrorKind::ValidationError,
                      "common_refinement needs at least one partition");
  const MeasureAlgebra& alg = parts[0].algebra();
  for (const Partition& p : parts)
    require_compatible(alg, p.algebra(), "common_refinement");

  // Group atoms by their tuple of block indices; emit groups in order of
  // first appearance (smallest atom index).
  std::map<std::vector<std::size_t>, std::size_t> group_of;
  std::vector<Event> blocks;
  std::vector<std::size_t> key(parts.size());
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    for (std::size_t i = 0; i < parts.size(); ++i) key[i] = parts[i].block_of(a);
    auto it = group_of.find(key);
    if (it == group_of.end()) {
      it = group_of.emplace(key, blocks.size()).first;
      blocks.push_back(Event::empty(alg));
    }
    blocks[it->second].insert(a);
  }
  return Partition(alg, std::move(blocks));
}

}  // namespace stable
