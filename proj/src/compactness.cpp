#include "stable/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stable {

CompactnessReport is_stably_compact(const StableSet& k) {
  CompactnessReport rep;
  BoundedCheck chk = check_closed_bounded(k);
  if (!chk.ok) {
    rep.compact = false;
    rep.bad_atom = chk.bad_atom;
    rep.reason = chk.defect;
    return rep;
  }
  rep.compact = true;
  rep.radius = std::move(chk.radius);
  return rep;
}

CompactnessReport is_stably_compact(const StableSet& k, const SeminormFamily& f) {
  require_compatible(k.algebra(), f.algebra(), "is_stably_compact");
  if (f.dim() != k.dim())
    throw StableError(ErrorKind::ArityError,
                      "is_stably_compact: family dimension mismatch");
  return is_stably_compact(k);
}

EpsNet stable_eps_net(const StableSet& k, const StableMetric& d,
                      const L0Scalar& radius, Exec exec) {
  if (!k.all_points())
    throw StableError(ErrorKind::ValidationError,
                      "stable_eps_net: needs a Points rep");
  require_compatible(k.algebra(), d.algebra(), "stable_eps_net");
  require_compatible(k.algebra(), radius.algebra(), "stable_eps_net");
  if (!d.per_atom_local())
    throw StableError(ErrorKind::ValidationError,
                      "stable_eps_net: metric must be per-atom local (the "
                      "greedy cover is built atom by atom)");
  for (std::size_t a = 0; a < k.atoms(); ++a)
    if (!(radius[a] > 0.0))
      throw StableError(ErrorKind::RadiusNotStrictlyPositive,
                        "stable_eps_net: radius must be > 0 at atom " +
                            std::to_string(a));
  const MeasureAlgebra& alg = k.algebra();
  const std::size_t n = alg.atoms();
  const std::size_t dim = k.dim();
  std::size_t m = 0;
  for (std::size_t a = 0; a < n; ++a) m = std::max(m, k.count(a));

  // column vectors: column j holds each atom's j-th point (clamped), so one
  // metric evaluation yields that index pair's distance on every atom at once
  std::vector<L0Vector> cols;
  cols.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> flat(n * dim);
    for (std::size_t a = 0; a < n; ++a) {
      auto p = k.point(a, std::min(j, k.count(a) - 1));
      std::copy(p.begin(), p.end(), flat.begin() + a * dim);
    }
    cols.emplace_back(alg, dim, std::move(flat));
  }
  std::vector<std::vector<L0Scalar>> dist(m);
  for (std::size_t i = 0; i < m; ++i)
    dist[i].assign(m, L0Scalar::zero(alg));
  for_each_index(exec, m * m, [&](std::size_t idx) {
    const std::size_t i = idx / m, j = idx % m;
    if (j <= i) return;
    dist[i][j] = d(cols[i], cols[j]);
  });
  auto dist_at = [&](std::size_t i, std::size_t j, std::size_t a) {
    if (i == j) return 0.0;
    return i < j ? dist[i][j][a] : dist[j][i][a];
  };

  std::vector<std::vector<std::size_t>> centers(n);
  for_each_index(exec, n, [&](std::size_t a) {
    const std::size_t cnt = k.count(a);
    std::vector<bool> covered(cnt, false);
    for (std::size_t i = 0; i < cnt; ++i) {
      if (covered[i]) continue;
      centers[a].push_back(i);
      for (std::size_t j = i; j < cnt; ++j)
        if (!covered[j] && dist_at(i, j, a) <= radius[a]) covered[j] = true;
    }
  });

  std::vector<std::int64_t> counts(n);
  for (std::size_t a = 0; a < n; ++a)
    counts[a] = static_cast<std::int64_t>(centers[a].size());
  StableFamily<L0Vector> fam = StableFamily<L0Vector>::from_counts(
      alg, counts, [&](const Event&, std::size_t idx) {
        std::vector<double> flat(n * dim);
        for (std::size_t a = 0; a < n; ++a) {
          const std::size_t pick =
              centers[a][std::min(idx, centers[a].size() - 1)];
          auto p = k.point(a, pick);
          std::copy(p.begin(), p.end(), flat.begin() + a * dim);
        }
        return L0Vector(alg, dim, std::move(flat));
      });
  return EpsNet{radius, std::move(fam), std::move(centers)};
}

ClusterCertificate cluster_lemma_construct(std::span<const L0Scalar> rs) {
  if (rs.empty())
    throw StableError(ErrorKind::ArityError,
                      "cluster_lemma_construct: empty scalar list");
  const MeasureAlgebra& alg = rs.front().algebra();
  const std::size_t n = alg.atoms();
  const std::size_t nlist = rs.size();
  std::vector<Event> supports;
  for (const L0Scalar& r : rs) {
    require_compatible(alg, r.algebra(), "cluster_lemma_construct");
    Event sup = Event::empty(alg);
    for (std::size_t a = 0; a < n; ++a) {
      if (r[a] < 0.0)
        throw StableError(ErrorKind::ValidationError,
                          "cluster_lemma_construct: scalars must be >= 0");
      if (r[a] > 0.0) sup.insert(a);
    }
    if (sup.is_empty())
      throw StableError(ErrorKind::ValidationError,
                        "cluster_lemma_construct: a scalar vanishes everywhere");
    supports.push_back(std::move(sup));
  }

  // nested chain: each link packs the cheapest atoms of the next support
  // while staying under half the previous link's mass
  std::vector<Event> bs;
  bs.push_back(supports[0]);
  for (std::size_t idx = 1; idx < nlist; ++idx) {
    const double cap = 0.5 * bs.back().prob();
    auto atoms = supports[idx].atom_list();
    std::sort(atoms.begin(), atoms.end(), [&](std::size_t x, std::size_t y) {
      if (alg.prob(x) != alg.prob(y)) return alg.prob(x) < alg.prob(y);
      return x < y;
    });
    Event b = Event::empty(alg);
    double mass = 0.0;
    for (std::size_t a : atoms) {
      if (mass + alg.prob(a) < cap) {
        b.insert(a);
        mass += alg.prob(a);
      } else {
        break;
      }
    }
    if (b.is_empty())
      throw ConstructionImpossibleError(
          "cluster_lemma_construct: no sub-event of the next support fits "
          "under half the previous mass (achieved " +
              std::to_string(idx) + " of " + std::to_string(nlist) + ")",
          idx);
    bs.push_back(std::move(b));
  }

  std::vector<Event> cs;
  for (std::size_t idx = 0; idx < nlist; ++idx) {
    Event c = bs[idx];
    for (std::size_t later = idx + 1; later < nlist; ++later)
      c = c.minus(bs[later]);
    cs.push_back(std::move(c));
  }

  std::vector<double> rv(n, 1.0);
  for (std::size_t idx = 0; idx < nlist; ++idx)
    for (std::size_t a : cs[idx].atom_list()) rv[a] = rs[idx][a] / 2.0;
  return ClusterCertificate{L0Scalar(alg, std::move(rv)), std::move(bs),
                            std::move(cs)};
}

StableSet product_sets(std::span<const StableSet> ks, std::size_t max_dim,
                       std::uint64_t max_points_per_atom) {
  if (ks.empty())
    throw StableError(ErrorKind::ArityError, "product_sets: empty factor list");
  const MeasureAlgebra& alg = ks.front().algebra();
  std::size_t dim = 0;
  for (const StableSet& k : ks) {
    require_compatible(alg, k.algebra(), "product_sets");
    if (!k.all_points())
      throw StableError(ErrorKind::ValidationError,
                        "product_sets: factors must be Points reps");
    dim += k.dim();
  }
  if (dim > max_dim)
    throw StableError(ErrorKind::DimensionOverflow,
                      "product_sets: combined dimension " + std::to_string(dim) +
                          " exceeds the cap " + std::to_string(max_dim));
  const std::size_t n = alg.atoms();
  std::vector<AtomRep> reps(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::uint64_t total = 1;
    for (const StableSet& k : ks) {
      total *= k.count(a);
      if (total > max_points_per_atom)
        throw StableError(ErrorKind::DimensionOverflow,
                          "product_sets: per-atom product size exceeds the "
                          "cap at atom " + std::to_string(a));
    }
    reps[a].kind = RepKind::Points;
    reps[a].flat.reserve(total * dim);
    // odometer over factor indices, last factor fastest
    std::vector<std::size_t> idx(ks.size(), 0);
    for (std::uint64_t t = 0; t < total; ++t) {
      for (std::size_t f = 0; f < ks.size(); ++f) {
        auto p = ks[f].point(a, idx[f]);
        reps[a].flat.insert(reps[a].flat.end(), p.begin(), p.end());
      }
      for (std::size_t f = ks.size(); f-- > 0;) {
        if (++idx[f] < ks[f].count(a)) break;
        idx[f] = 0;
      }
    }
  }
  return StableSet(alg, dim, std::move(reps));
}

ConstantSubsequence extract_constant_subsequence(
    const StableSet& k,
    const std::function<std::int64_t(std::size_t, std::int64_t)>& seq,
    std::int64_t probe_len) {
  if (!k.all_points())
    throw StableError(ErrorKind::ValidationError,
                      "extract_constant_subsequence: needs a Points rep");
  if (probe_len < 4)
    throw StableError(ErrorKind::ValidationError,
                      "extract_constant_subsequence: probe too short");
  const MeasureAlgebra& alg = k.algebra();
  const std::size_t n = alg.atoms();
  const std::size_t dim = k.dim();
  std::vector<std::int64_t> start(n), stride(n);
  std::vector<double> flat(n * dim);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::int64_t> vals(probe_len);
    for (std::int64_t t = 0; t < probe_len; ++t) {
      vals[t] = seq(a, t);
      if (vals[t] < 0 || vals[t] >= static_cast<std::int64_t>(k.count(a)))
        throw StableError(ErrorKind::ValidationError,
                          "extract_constant_subsequence: index out of range "
                          "at atom " + std::to_string(a));
    }
    // smallest (burn-in, period) consistent with the probe window
    bool found = false;
    for (std::int64_t p = 1; p <= probe_len / 2 && !found; ++p) {
      for (std::int64_t b = 0; b + 2 * p <= probe_len && !found; ++b) {
        bool ok = true;
        for (std::int64_t t = b; t + p < probe_len && ok; ++t)
          ok = vals[t] == vals[t + p];
        if (ok) {
          start[a] = b;
          stride[a] = p;
          found = true;
        }
      }
    }
    if (!found)
      throw StableError(ErrorKind::ValidationError,
                        "extract_constant_subsequence: the sequence is not "
                        "eventually periodic within the probe at atom " +
                            std::to_string(a));
    auto pt = k.point(a, static_cast<std::size_t>(vals[start[a]]));
    std::copy(pt.begin(), pt.end(), flat.begin() + a * dim);
  }
  return ConstantSubsequence{L0Vector(alg, dim, std::move(flat)),
                             std::move(start), std::move(stride)};
}

}  // namespace stable
