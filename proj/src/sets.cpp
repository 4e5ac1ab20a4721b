#include "stable/sets.hpp"

#include "stable/convex.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace stable {

namespace {
// Exact lexicographic compare of flat points.
struct PointLess {
  bool operator()(const std::vector<double>& a, const std::vector<double>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

std::vector<double> copy_point(std::span<const double> p) {
  return std::vector<double>(p.begin(), p.end());
}
}  // namespace

StableSet::StableSet(MeasureAlgebra alg, std::size_t dim,
                     std::vector<AtomRep> per_atom)
    : data_(std::make_shared<const Data>(std::move(alg), dim, std::move(per_atom))) {
  const auto& d = *data_;
  if (d.dim == 0)
    throw StableError(ErrorKind::ValidationError, "set dimension must be >= 1");
  if (d.per_atom.size() != d.alg.atoms())
    throw StableError(ErrorKind::ValidationError, "set needs one rep per atom");
  for (std::size_t a = 0; a < d.per_atom.size(); ++a) {
    const AtomRep& rep = d.per_atom[a];
    if (rep.flat.empty() || rep.flat.size() % d.dim != 0)
      throw StableError(ErrorKind::ValidationError,
                        "per-atom set at atom " + std::to_string(a) +
                            " must hold a non-empty list of dim-" +
                            std::to_string(d.dim) + " points");
    for (double x : rep.flat)
      if (!std::isfinite(x))
        throw StableError(ErrorKind::ValidationError,
                          "per-atom set at atom " + std::to_string(a) +
                              " has non-finite coordinates");
    if (rep.kind == RepKind::Polytope) {
      const std::size_t n = rep.count(d.dim);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          bool same = true;
          for (std::size_t c = 0; c < d.dim; ++c)
            if (rep.flat[i * d.dim + c] != rep.flat[j * d.dim + c]) {
              same = false;
              break;
            }
          if (same)
            throw StableError(ErrorKind::ValidationError,
                              "polytope at atom " + std::to_string(a) +
                                  " lists a duplicate vertex");
        }
    }
  }
}

StableSet StableSet::unchecked(MeasureAlgebra alg, std::size_t dim,
                               std::vector<AtomRep> per_atom) {
  return StableSet(std::make_shared<const Data>(std::move(alg), dim, std::move(per_atom)));
}

bool StableSet::all_points() const {
  for (const AtomRep& r : data_->per_atom)
    if (r.kind != RepKind::Points) return false;
  return true;
}

bool StableSet::all_polytopes() const {
  for (const AtomRep& r : data_->per_atom)
    if (r.kind != RepKind::Polytope) return false;
  return true;
}

bool StableSet::operator==(const StableSet& o) const {
  if (!algebra().compatible(o.algebra()) || dim() != o.dim()) return false;
  for (std::size_t a = 0; a < atoms(); ++a) {
    if (rep(a).kind != o.rep(a).kind || rep(a).flat != o.rep(a).flat) return false;
  }
  return true;
}

std::optional<std::uint64_t> StableSet::selector_count() const {
  std::uint64_t total = 1;
  for (std::size_t a = 0; a < atoms(); ++a) {
    const std::uint64_t c = count(a);
    if (c != 0 && total > (std::uint64_t{1} << 62) / c) return std::nullopt;
    total *= c;
  }
  return total;
}

void StableSet::for_each_selector(const std::function<void(const L0Vector&)>& fn) const {
  if (!all_points())
    throw StableError(ErrorKind::NotEnumerable,
                      "selector enumeration needs finite point lists, not polytopes");
  const std::size_t n = atoms();
  const std::size_t d = dim();
  std::vector<std::size_t> odo(n, 0);
  std::vector<double> flat(n * d);
  for (;;) {
    for (std::size_t a = 0; a < n; ++a) {
      auto p = point(a, odo[a]);
      for (std::size_t j = 0; j < d; ++j) flat[a * d + j] = p[j];
    }
    fn(L0Vector(algebra(), d, flat));
    // odometer: last atom fastest
    std::size_t a = n;
    while (a > 0) {
      --a;
      if (++odo[a] < count(a)) break;
      odo[a] = 0;
      if (a == 0) return;
    }
  }
}

std::vector<L0Vector> StableSet::selector_list(std::uint64_t limit) const {
  auto c = selector_count();
  if (!c || *c > limit)
    throw StableError(ErrorKind::DimensionOverflow,
                      "selector enumeration would exceed the configured limit");
  std::vector<L0Vector> out;
  out.reserve(static_cast<std::size_t>(*c));
  for_each_selector([&](const L0Vector& x) { out.push_back(x); });
  return out;
}

namespace {

// Per-atom value sets, each point kept once in order of first appearance.
std::vector<std::vector<std::vector<double>>> value_sets(std::span<const L0Vector> s) {
  const MeasureAlgebra& alg = s[0].algebra();
  const std::size_t d = s[0].dim();
  std::vector<std::vector<std::vector<double>>> vs(alg.atoms());
  std::vector<std::map<std::vector<double>, bool, PointLess>> seen(alg.atoms());
  for (const L0Vector& x : s) {
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      auto p = copy_point(x.point(a));
      if (seen[a].emplace(p, true).second) vs[a].push_back(std::move(p));
    }
  }
  (void)d;
  return vs;
}

void require_uniform(std::span<const L0Vector> s, const char* what) {
  if (s.empty()) throw StableError(ErrorKind::ArityError,
                                   std::string(what) + ": empty vector list");
  for (const L0Vector& x : s) require_same_shape(s[0], x, what);
}

}  // namespace

bool is_stable(std::span<const L0Vector> s) {
  require_uniform(s, "is_stable");
  auto vs = value_sets(s);
  // S is always contained in the product of its value sets, so S is the
  // product iff the deduplicated cardinality matches the product of counts.
  std::map<std::vector<double>, bool> dedup;
  const std::size_t d = s[0].dim();
  for (const L0Vector& x : s) {
    std::vector<double> key;
    key.reserve(s[0].atoms() * d);
    for (std::size_t a = 0; a < x.atoms(); ++a)
      for (std::size_t j = 0; j < d; ++j) key.push_back(x.coord(a, j));
    dedup.emplace(std::move(key), true);
  }
  long double product = 1.0L;
  for (const auto& v : vs) {
    product *= static_cast<long double>(v.size());
    if (product > static_cast<long double>(dedup.size())) return false;
  }
  return product == static_cast<long double>(dedup.size());
}

StableSet stable_hull(std::span<const L0Vector> s) {
  require_uniform(s, "stable_hull");
  const MeasureAlgebra& alg = s[0].algebra();
  const std::size_t d = s[0].dim();
  auto vs = value_sets(s);
  std::vector<AtomRep> reps(alg.atoms());
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    reps[a].kind = RepKind::Points;
    reps[a].flat.reserve(vs[a].size() * d);
    for (const auto& p : vs[a])
      reps[a].flat.insert(reps[a].flat.end(), p.begin(), p.end());
  }
  return StableSet(alg, d, std::move(reps));
}

StableSet concat_sets(const Partition& parts, std::span<const StableSet> ks) {
  if (ks.size() != parts.size())
    throw StableError(ErrorKind::ArityError,
                      "concat_sets: need one set per partition block");
  const MeasureAlgebra& alg = parts.algebra();
  const std::size_t d = ks.empty() ? 1 : ks[0].dim();
  for (const StableSet& k : ks) {
    require_compatible(alg, k.algebra(), "concat_sets");
    if (k.dim() != d)
      throw StableError(ErrorKind::ArityError, "concat_sets: dimension mismatch");
  }
  std::vector<AtomRep> reps(alg.atoms());
  for (std::size_t a = 0; a < alg.atoms(); ++a)
    reps[a] = ks[parts.block_of(a)].rep(a);
  return StableSet(alg, d, std::move(reps));
}

StableSet extract_setvalued_map(std::span<const L0Vector> s) {
  if (!is_stable(s))
    throw StableError(ErrorKind::NotStable,
                      "extract_setvalued_map needs a stable input set");
  return stable_hull(s);
}

BoundedCheck check_closed_bounded(const StableSet& k) {
  BoundedCheck out;
  std::vector<double> radius(k.atoms(), 0.0);
  for (std::size_t a = 0; a < k.atoms(); ++a) {
    const AtomRep& rep = k.rep(a);
    if (rep.flat.empty() || rep.flat.size() % k.dim() != 0) {
      out.bad_atom = a;
      out.defect = "empty per-atom set";
      return out;
    }
    double r = 0.0;
    for (std::size_t i = 0; i < rep.count(k.dim()); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < k.dim(); ++j) {
        const double x = rep.flat[i * k.dim() + j];
        if (!std::isfinite(x)) {
          out.bad_atom = a;
          out.defect = "non-finite coordinate";
          return out;
        }
        s += x * x;
      }
      // norm is convex, so over a polytope the max sits at a vertex; the
      // same formula covers both rep kinds.
      r = std::max(r, std::sqrt(s));
    }
    radius[a] = r;
  }
  out.ok = true;
  out.radius = L0Scalar(k.algebra(), std::move(radius));
  return out;
}

bool set_contains(const StableSet& k, const L0Vector& x, double tol) {
  require_compatible(k.algebra(), x.algebra(), "set_contains");
  if (x.dim() != k.dim())
    throw StableError(ErrorKind::ArityError, "set_contains: dimension mismatch");
  const std::size_t dim = k.dim();
  for (std::size_t a = 0; a < k.atoms(); ++a) {
    auto p = x.point(a);
    if (k.rep(a).kind == RepKind::Points) {
      bool hit = false;
      for (std::size_t i = 0; i < k.count(a) && !hit; ++i) {
        auto q = k.point(a, i);
        double d = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
          d = std::max(d, std::fabs(p[j] - q[j]));
        hit = d <= tol;
      }
      if (!hit) return false;
    } else {
      std::vector<geom::Pt> verts;
      for (std::size_t i = 0; i < k.count(a); ++i) {
        auto q = k.point(a, i);
        verts.emplace_back(q.begin(), q.end());
      }
      geom::Pt pt(p.begin(), p.end());
      if (geom::dist2_to_hull(pt, verts, dim) > tol * tol + 1e-30) return false;
    }
  }
  return true;
}

}  // namespace stable
