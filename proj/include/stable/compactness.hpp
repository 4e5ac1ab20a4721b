#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stable/family.hpp"
#include "stable/metrics.hpp"
#include "stable/parallel.hpp"
#include "stable/sets.hpp"

namespace stable {

struct CompactnessReport {
  bool compact = false;
  std::optional<L0Scalar> radius;       // per-atom bound certificate
  std::optional<std::size_t> bad_atom;  // offending atom when not compact
  std::string reason;
};

// Product-form sets over a finite atomic algebra are compact exactly when
// every per-atom piece is non-empty finite data; the certificate is the
// per-atom radius. Defective reps (smuggled via unchecked/raw JSON) yield a
// report, not a throw. The seminorm family does not change the verdict —
// the three topologies share their compact sets — so the overload with a
// family only validates compatibility.
CompactnessReport is_stably_compact(const StableSet& k);
CompactnessReport is_stably_compact(const StableSet& k, const SeminormFamily& f);

struct EpsNet {
  L0Scalar radius;
  StableFamily<L0Vector> centers;
  // chosen per-atom indices into the source set (audit aid)
  std::vector<std::vector<std::size_t>> center_indices;
};

// Greedy cover of a Points-rep set: per atom, the first point not yet within
// radius of a center becomes the next center. Net sizes form the counts of a
// stable finite family. The metric must be per-atom local.
EpsNet stable_eps_net(const StableSet& k, const StableMetric& d,
                      const L0Scalar& radius, Exec exec = Exec::serial);

struct ClusterCertificate {
  L0Scalar r;
  std::vector<Event> bs;  // nested mass-halving chain
  std::vector<Event> cs;  // disjoint certificates, P(r_n >= r) >= P(C_n) > 0
};

// Given finitely many nonnegative, somewhere-positive scalars r_n, produces a
// strictly positive r with P(r_n >= r) > 0 for every n. B_1 = {r_1 > 0};
// each B_{n+1} packs the cheapest atoms of {r_{n+1} > 0} while its mass stays
// under half of the previous one; C_n = B_n minus all later B_k; r = r_n/2 on
// C_n and 1 outside. Throws ConstructionImpossible (with the achievable
// prefix length) when no non-empty next link exists.
ClusterCertificate cluster_lemma_construct(std::span<const L0Scalar> rs);

// Per-atom Cartesian product of Points-rep sets; dimensions add. Guards: the
// summed dimension and the per-atom point counts must stay under the caps.
StableSet product_sets(std::span<const StableSet> ks, std::size_t max_dim = 16,
                       std::uint64_t max_points_per_atom = std::uint64_t{1} << 20);

struct ConstantSubsequence {
  L0Vector point;                    // the per-atom constant value
  std::vector<std::int64_t> start;   // per-atom first index of the subsequence
  std::vector<std::int64_t> stride;  // per-atom arithmetic stride (>= 1)
};

// For a per-atom eventually periodic index sequence into a Points rep,
// extracts an arithmetic subsequence on which the sequence is constant at
// every atom: seq(atom, start + k*stride) == seq(atom, start) for all k >= 0.
ConstantSubsequence extract_constant_subsequence(
    const StableSet& k,
    const std::function<std::int64_t(std::size_t atom, std::int64_t n)>& seq,
    std::int64_t probe_len = 64);

}  // namespace stable
