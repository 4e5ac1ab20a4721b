#include "stable/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace stable {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  Partition to_partition(const MeasureAlgebra& alg) {
    std::map<std::size_t, std::size_t> root_to_block;
    std::vector<Event> blocks;
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      std::size_t r = find(a);
      auto it = root_to_block.find(r);
      if (it == root_to_block.end()) {
        it = root_to_block.emplace(r, blocks.size()).first;
        blocks.push_back(Event::empty(alg));
      }
      blocks[it->second].insert(a);
    }
    return Partition(alg, std::move(blocks));
  }
};

}  // namespace

Partition finest_common_coarsening(std::span<const Partition> ps) {
  if (ps.empty())
    throw StableError(ErrorKind::ArityError,
                      "finest_common_coarsening: no partitions");
  const MeasureAlgebra& alg = ps.front().algebra();
  UnionFind uf(alg.atoms());
  for (const Partition& p : ps) {
    require_compatible(alg, p.algebra(), "finest_common_coarsening");
    for (const Event& b : p.blocks()) {
      auto atoms = b.atom_list();
      for (std::size_t i = 1; i < atoms.size(); ++i) uf.unite(atoms[0], atoms[i]);
    }
  }
  return uf.to_partition(alg);
}

Seminorm Seminorm::weighted(MeasureAlgebra alg, std::size_t dim,
                            std::vector<double> weights, double exponent) {
  if (dim == 0)
    throw StableError(ErrorKind::ValidationError, "weighted: dim must be >= 1");
  if (!(exponent == 1.0 || exponent == 2.0 ||
        exponent == std::numeric_limits<double>::infinity()))
    throw StableError(ErrorKind::ValidationError,
                      "weighted: exponent must be 1, 2 or inf");
  if (weights.size() == dim) {
    std::vector<double> rep(alg.atoms() * dim);
    for (std::size_t a = 0; a < alg.atoms(); ++a)
      std::copy(weights.begin(), weights.end(), rep.begin() + a * dim);
    weights = std::move(rep);
  }
  if (weights.size() != alg.atoms() * dim)
    throw StableError(ErrorKind::ValidationError,
                      "weighted: need one weight per atom and coordinate");
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw StableError(ErrorKind::ValidationError,
                        "weighted: weights must be finite and >= 0");
  auto d = std::make_shared<Data>(alg);
  d->kind = Kind::Weighted;
  d->dim = dim;
  d->weights = std::move(weights);
  d->exponent = exponent;
  return Seminorm(std::move(d));
}

Seminorm Seminorm::pairing(L0Vector y) {
  auto d = std::make_shared<Data>(y.algebra());
  d->kind = Kind::Pairing;
  d->dim = y.dim();
  d->y.push_back(std::move(y));
  return Seminorm(std::move(d));
}

Seminorm Seminorm::conditional_lp(MeasureAlgebra alg, std::size_t dim,
                                  Partition sub, double p) {
  if (dim == 0)
    throw StableError(ErrorKind::ValidationError,
                      "conditional_lp: dim must be >= 1");
  if (!(p >= 1.0) || !std::isfinite(p))
    throw StableError(ErrorKind::ValidationError,
                      "conditional_lp: p must lie in [1, inf)");
  require_compatible(alg, sub.algebra(), "conditional_lp");
  auto d = std::make_shared<Data>(alg);
  d->kind = Kind::CondLp;
  d->dim = dim;
  d->exponent = p;
  d->parts.push_back(std::move(sub));
  return Seminorm(std::move(d));
}

Seminorm Seminorm::sup_hull(std::vector<Seminorm> members) {
  if (members.empty())
    throw StableError(ErrorKind::ArityError, "sup_hull: no members");
  for (const Seminorm& m : members) {
    require_compatible(members.front().algebra(), m.algebra(), "sup_hull");
    if (m.dim() != members.front().dim())
      throw StableError(ErrorKind::ArityError, "sup_hull: mixed dimensions");
  }
  auto d = std::make_shared<Data>(members.front().algebra());
  d->kind = Kind::SupHull;
  d->dim = members.front().dim();
  d->members = std::move(members);
  return Seminorm(std::move(d));
}

Seminorm Seminorm::concat(Partition parts, std::vector<Seminorm> members) {
  if (members.size() != parts.size())
    throw StableError(ErrorKind::ArityError,
                      "concat: need one member per partition block");
  for (const Seminorm& m : members) {
    require_compatible(parts.algebra(), m.algebra(), "concat");
    if (m.dim() != members.front().dim())
      throw StableError(ErrorKind::ArityError, "concat: mixed dimensions");
  }
  auto d = std::make_shared<Data>(parts.algebra());
  d->kind = Kind::Concat;
  d->dim = members.front().dim();
  d->parts.push_back(std::move(parts));
  d->members = std::move(members);
  return Seminorm(std::move(d));
}

const Partition& Seminorm::parts() const {
  if (data_->parts.empty())
    throw StableError(ErrorKind::ValidationError,
                      "seminorm kind carries no partition");
  return data_->parts.front();
}

const L0Vector& Seminorm::pairing_vector() const {
  if (data_->y.empty())
    throw StableError(ErrorKind::ValidationError,
                      "seminorm kind carries no pairing vector");
  return data_->y.front();
}

L0Scalar Seminorm::operator()(const L0Vector& x) const {
  require_compatible(data_->alg, x.algebra(), "Seminorm::operator()");
  if (x.dim() != data_->dim)
    throw StableError(ErrorKind::ArityError,
                      "Seminorm::operator(): dimension mismatch");
  const MeasureAlgebra& alg = data_->alg;
  const std::size_t n = alg.atoms();
  const std::size_t dim = data_->dim;
  switch (data_->kind) {
    case Kind::Weighted: {
      std::vector<double> out(n, 0.0);
      for (std::size_t a = 0; a < n; ++a) {
        auto p = x.point(a);
        const double* w = data_->weights.data() + a * dim;
        if (data_->exponent == 1.0) {
          double s = 0.0;
          for (std::size_t j = 0; j < dim; ++j) s += w[j] * std::fabs(p[j]);
          out[a] = s;
        } else if (data_->exponent == 2.0) {
          double s = 0.0;
          for (std::size_t j = 0; j < dim; ++j) {
            const double t = w[j] * p[j];
            s += t * t;
          }
          out[a] = std::sqrt(s);
        } else {
          double s = 0.0;
          for (std::size_t j = 0; j < dim; ++j)
            s = std::max(s, w[j] * std::fabs(p[j]));
          out[a] = s;
        }
      }
      return L0Scalar(alg, std::move(out));
    }
    case Kind::Pairing:
      return x.dot(data_->y.front()).abs();
    case Kind::CondLp: {
      const Partition& sub = data_->parts.front();
      const double p = data_->exponent;
      std::vector<double> out(n, 0.0);
      for (const Event& b : sub.blocks()) {
        double mass = 0.0, acc = 0.0;
        for (std::size_t a : b.atom_list()) {
          auto pt = x.point(a);
          double nrm2 = 0.0;
          for (double c : pt) nrm2 += c * c;
          acc += alg.prob(a) * std::pow(std::sqrt(nrm2), p);
          mass += alg.prob(a);
        }
        const double v = std::pow(acc / mass, 1.0 / p);
        for (std::size_t a : b.atom_list()) out[a] = v;
      }
      return L0Scalar(alg, std::move(out));
    }
    case Kind::SupHull: {
      L0Scalar s = data_->members.front()(x);
      for (std::size_t i = 1; i < data_->members.size(); ++i)
        s = s.max(data_->members[i](x));
      return s;
    }
    case Kind::Concat: {
      std::vector<L0Scalar> vals;
      vals.reserve(data_->members.size());
      for (const Seminorm& m : data_->members) vals.push_back(m(x));
      return concat_scalars(data_->parts.front(), vals);
    }
  }
  throw StableError(ErrorKind::ValidationError, "unreachable seminorm kind");
}

Partition Seminorm::homogeneity_partition() const {
  const MeasureAlgebra& alg = data_->alg;
  switch (data_->kind) {
    case Kind::Weighted:
    case Kind::Pairing:
      return Partition::discrete(alg);
    case Kind::CondLp:
      return data_->parts.front();
    case Kind::SupHull: {
      std::vector<Partition> ps;
      for (const Seminorm& m : data_->members)
        ps.push_back(m.homogeneity_partition());
      return finest_common_coarsening(ps);
    }
    case Kind::Concat: {
      // Only the member active on a concat block contributes there, but its
      // value may depend on the whole homogeneity block it reaches into, so
      // every touched block must be glued.
      UnionFind uf(alg.atoms());
      const Partition& parts = data_->parts.front();
      for (std::size_t k = 0; k < parts.size(); ++k) {
        Partition hp = data_->members[k].homogeneity_partition();
        for (const Event& b : hp.blocks()) {
          if (b.disjoint_from(parts.block(k))) continue;
          auto atoms = b.atom_list();
          for (std::size_t i = 1; i < atoms.size(); ++i)
            uf.unite(atoms[0], atoms[i]);
        }
      }
      return uf.to_partition(alg);
    }
  }
  throw StableError(ErrorKind::ValidationError, "unreachable seminorm kind");
}

bool Seminorm::per_atom_local() const {
  return homogeneity_partition().size() == data_->alg.atoms();
}

SeminormFamily::SeminormFamily(std::vector<Seminorm> members, bool separated)
    : members_(std::move(members)), separated_(separated) {
  if (members_.empty())
    throw StableError(ErrorKind::ArityError, "seminorm family needs members");
  for (const Seminorm& m : members_) {
    require_compatible(members_.front().algebra(), m.algebra(),
                       "SeminormFamily");
    if (m.dim() != members_.front().dim())
      throw StableError(ErrorKind::ArityError,
                        "SeminormFamily: mixed dimensions");
  }
}

namespace {

L0Vector random_vector(const MeasureAlgebra& alg, std::size_t dim,
                       std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> flat(alg.atoms() * dim);
  for (double& v : flat) v = gauss(rng);
  return L0Vector(alg, dim, std::move(flat));
}

}  // namespace

void spot_check_seminorm(const Seminorm& p, int samples, std::uint64_t seed) {
  const MeasureAlgebra& alg = p.algebra();
  const std::size_t dim = p.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Partition hp = p.homogeneity_partition();
  for (int t = 0; t < samples; ++t) {
    L0Vector x = random_vector(alg, dim, rng);
    L0Vector y = random_vector(alg, dim, rng);
    L0Scalar px = p(x), py = p(y), pxy = p(x + y);
    // scalar field measurable w.r.t. the homogeneity partition
    std::vector<double> rv(alg.atoms());
    for (const Event& b : hp.blocks()) {
      const double c = gauss(rng) * (rng() & 1 ? 1.0 : -1.0);
      for (std::size_t a : b.atom_list()) rv[a] = c;
    }
    L0Scalar r(alg, std::move(rv));
    L0Scalar prx = p(x.scaled(r));
    L0Scalar hom = r.abs() * px;
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      const double scale =
          std::max({1.0, px[a] + py[a], std::fabs(hom[a])});
      if (pxy[a] > px[a] + py[a] + 1e-9 * scale)
        throw StableError(ErrorKind::ValidationError,
                          "seminorm subadditivity fails at atom " +
                              std::to_string(a));
      if (std::fabs(prx[a] - hom[a]) > 1e-9 * scale)
        throw StableError(ErrorKind::ValidationError,
                          "seminorm homogeneity fails at atom " +
                              std::to_string(a));
      if (px[a] < 0.0)
        throw StableError(ErrorKind::ValidationError,
                          "seminorm takes a negative value at atom " +
                              std::to_string(a));
    }
  }
}

void spot_check_separated(const SeminormFamily& F, int samples,
                          std::uint64_t seed) {
  const MeasureAlgebra& alg = F.algebra();
  std::mt19937_64 rng(seed);
  auto probe = [&](const L0Vector& x) {
    L0Scalar s = F.members().front()(x);
    for (std::size_t i = 1; i < F.size(); ++i) s = s.max(F.members()[i](x));
    for (std::size_t a = 0; a < alg.atoms(); ++a) {
      double nrm = 0.0;
      for (double c : x.point(a)) nrm = std::max(nrm, std::fabs(c));
      if (nrm > 1e-9 && s[a] == 0.0)
        throw StableError(ErrorKind::ValidationError,
                          "family is not separated: sup vanishes at atom " +
                              std::to_string(a) + " on a nonzero vector");
    }
  };
  // dense samples miss seminorms blind to a single coordinate, so probe the
  // axes explicitly as well
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  for (std::size_t j = 0; j < F.dim(); ++j) {
    std::vector<double> flat(alg.atoms() * F.dim(), 0.0);
    for (std::size_t a = 0; a < alg.atoms(); ++a)
      flat[a * F.dim() + j] = mag(rng) * (rng() & 1 ? 1.0 : -1.0);
    probe(L0Vector(alg, F.dim(), std::move(flat)));
  }
  for (int t = 0; t < samples; ++t) probe(random_vector(alg, F.dim(), rng));
}

namespace {

void validate_members(const L0Vector& center,
                      const std::vector<Seminorm>& members, const char* what) {
  if (members.empty())
    throw StableError(ErrorKind::ArityError,
                      std::string(what) + ": needs at least one seminorm");
  for (const Seminorm& m : members) {
    require_compatible(center.algebra(), m.algebra(), what);
    if (m.dim() != center.dim())
      throw StableError(ErrorKind::ArityError,
                        std::string(what) + ": seminorm dimension mismatch");
  }
}

void require_strictly_positive(const L0Scalar& r, const char* what) {
  for (std::size_t a = 0; a < r.algebra().atoms(); ++a)
    if (!(r[a] > 0.0))
      throw StableError(ErrorKind::RadiusNotStrictlyPositive,
                        std::string(what) + ": radius must be > 0 at atom " +
                            std::to_string(a));
}

}  // namespace

Neighborhood Neighborhood::eps_lambda(L0Vector center,
                                      std::vector<Seminorm> members, double eps,
                                      double lambda) {
  validate_members(center, members, "eps_lambda");
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw StableError(ErrorKind::ValidationError, "eps_lambda: eps must be > 0");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw StableError(ErrorKind::ValidationError,
                      "eps_lambda: lambda must lie in (0,1)");
  Neighborhood u(Kind::EpsLambda, std::move(center));
  u.members_ = std::move(members);
  u.eps_ = eps;
  u.lambda_ = lambda;
  return u;
}

Neighborhood Neighborhood::l0_ball(L0Vector center, std::vector<Seminorm> members,
                                   L0Scalar radius) {
  validate_members(center, members, "l0_ball");
  require_compatible(center.algebra(), radius.algebra(), "l0_ball");
  require_strictly_positive(radius, "l0_ball");
  Neighborhood u(Kind::L0Ball, std::move(center));
  u.members_ = std::move(members);
  u.radius_ = std::make_shared<L0Scalar>(std::move(radius));
  return u;
}

Neighborhood Neighborhood::stable_ball(L0Vector center,
                                       StableFamily<Seminorm> members,
                                       L0Scalar radius) {
  require_compatible(center.algebra(), members.algebra(), "stable_ball");
  require_compatible(center.algebra(), radius.algebra(), "stable_ball");
  members.length();  // stable finite: every per-atom count >= 1
  for (std::size_t k = 0; k < members.block_count(); ++k)
    for (const Seminorm& m : members.items(k)) {
      require_compatible(center.algebra(), m.algebra(), "stable_ball");
      if (m.dim() != center.dim())
        throw StableError(ErrorKind::ArityError,
                          "stable_ball: seminorm dimension mismatch");
    }
  require_strictly_positive(radius, "stable_ball");
  Neighborhood u(Kind::StableBall, std::move(center));
  u.stable_members_ =
      std::make_shared<StableFamily<Seminorm>>(std::move(members));
  u.radius_ = std::make_shared<L0Scalar>(std::move(radius));
  return u;
}

bool Neighborhood::contains(const L0Vector& y) const {
  require_same_shape(center_, y, "Neighborhood::contains");
  L0Vector diff = center_ - y;
  const MeasureAlgebra& alg = center_.algebra();
  switch (kind_) {
    case Kind::EpsLambda: {
      L0Scalar s = members_.front()(diff);
      for (std::size_t i = 1; i < members_.size(); ++i)
        s = s.max(members_[i](diff));
      double good = 0.0;
      for (std::size_t a = 0; a < alg.atoms(); ++a)
        if (s[a] < eps_) good += alg.prob(a);
      return good > 1.0 - lambda_;
    }
    case Kind::L0Ball: {
      L0Scalar s = members_.front()(diff);
      for (std::size_t i = 1; i < members_.size(); ++i)
        s = s.max(members_[i](diff));
      return s.all_lt(*radius_);
    }
    case Kind::StableBall: {
      const auto& fam = *stable_members_;
      // evaluate each distinct member once, then take blockwise sups
      for (std::size_t k = 0; k < fam.block_count(); ++k) {
        std::vector<L0Scalar> vals;
        for (const Seminorm& m : fam.items(k)) vals.push_back(m(diff));
        for (std::size_t a = 0; a < alg.atoms(); ++a) {
          if (!fam.block(k).contains(a)) continue;
          double s = 0.0;
          for (const L0Scalar& v : vals) s = std::max(s, v[a]);
          if (!(s < (*radius_)[a])) return false;
        }
      }
      return true;
    }
  }
  return false;
}

bool contains(const Neighborhood& U, const L0Vector& y) { return U.contains(y); }

EpsLambdaWitness epslambda_witness(const Seminorm& q, double eps, double lam) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw StableError(ErrorKind::ValidationError,
                      "epslambda_witness: eps must be > 0");
  if (!(lam > 0.0 && lam < 1.0))
    throw StableError(ErrorKind::ValidationError,
                      "epslambda_witness: lam must lie in (0,1)");
  // q is a concat of sup pieces over a partition; a bare seminorm counts as
  // the single-block, single-member case
  std::vector<Event> blocks;
  std::vector<const Seminorm*> pieces;
  if (q.kind() == Seminorm::Kind::Concat) {
    for (const Event& b : q.parts().blocks()) blocks.push_back(b);
    for (const Seminorm& m : q.members()) pieces.push_back(&m);
  } else {
    blocks.push_back(Event::full(q.algebra()));
    pieces.push_back(&q);
  }
  // minimal m with P(union of blocks after m) < lam/2
  const std::size_t nb = blocks.size();
  std::vector<double> tail(nb + 1, 0.0);
  for (std::size_t k = nb; k-- > 0;) tail[k] = tail[k + 1] + blocks[k].prob();
  std::size_t m = 1;
  while (m < nb && !(tail[m] < lam / 2.0)) ++m;
  EpsLambdaWitness w;
  w.eps = eps;
  w.lam = lam / 2.0;
  w.blocks_kept = m;
  for (std::size_t k = 0; k < m; ++k) {
    const Seminorm& piece = *pieces[k];
    if (piece.kind() == Seminorm::Kind::SupHull)
      for (const Seminorm& s : piece.members()) w.members.push_back(s);
    else
      w.members.push_back(piece);
  }
  return w;
}

RefinementWitness topology_refinement_witness(const std::vector<Seminorm>& n1,
                                              double eps, double lam,
                                              const BallTranslator& translator,
                                              int audit_samples,
                                              std::uint64_t seed) {
  if (n1.empty())
    throw StableError(ErrorKind::ArityError,
                      "topology_refinement_witness: empty member set");
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw StableError(ErrorKind::ValidationError,
                      "topology_refinement_witness: eps must be > 0");
  if (!(lam > 0.0 && lam < 1.0))
    throw StableError(ErrorKind::ValidationError,
                      "topology_refinement_witness: lam must lie in (0,1)");
  const MeasureAlgebra& alg = n1.front().algebra();
  const std::size_t dim = n1.front().dim();
  for (const Seminorm& m : n1)
    if (!m.per_atom_local())
      throw StableError(ErrorKind::ValidationError,
                        "topology_refinement_witness: members must be "
                        "per-atom local (the localization step scales by an "
                        "indicator)");

  L0BallSpec input{n1, L0Scalar::constant(alg, eps)};
  L0BallSpec out = translator(input);
  if (out.members.empty())
    throw StableError(ErrorKind::TranslatorInvalid,
                      "translator returned an empty member set");
  for (const Seminorm& m : out.members) {
    require_compatible(alg, m.algebra(), "topology_refinement_witness");
    if (m.dim() != dim)
      throw StableError(ErrorKind::TranslatorInvalid,
                        "translator returned a mixed-dimension member");
    if (!m.per_atom_local())
      throw StableError(ErrorKind::ValidationError,
                        "topology_refinement_witness: translated members must "
                        "be per-atom local");
  }
  require_compatible(alg, out.radius.algebra(), "topology_refinement_witness");
  require_strictly_positive(out.radius, "topology_refinement_witness");

  // sampled audit of the claimed containment: anything strictly inside the
  // translated ball must land strictly inside the original one
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.999);
  for (int t = 0; t < audit_samples; ++t) {
    L0Vector x = random_vector(alg, dim, rng);
    L0Scalar s2 = out.members.front()(x);
    for (std::size_t i = 1; i < out.members.size(); ++i)
      s2 = s2.max(out.members[i](x));
    // per-atom rescale to land inside the translated ball; valid because the
    // members are per-atom local and homogeneous
    std::vector<double> c(alg.atoms());
    for (std::size_t a = 0; a < alg.atoms(); ++a)
      c[a] = s2[a] > 0.0 ? unif(rng) * out.radius[a] / s2[a] : 1.0;
    L0Vector xi = x.scaled(L0Scalar(alg, std::move(c)));
    L0Scalar check2 = out.members.front()(xi);
    for (std::size_t i = 1; i < out.members.size(); ++i)
      check2 = check2.max(out.members[i](xi));
    if (!check2.all_lt(out.radius)) continue;  // rounding pushed it out; skip
    L0Scalar s1 = n1.front()(xi);
    for (std::size_t i = 1; i < n1.size(); ++i) s1 = s1.max(n1[i](xi));
    for (std::size_t a = 0; a < alg.atoms(); ++a)
      if (!(s1[a] < eps))
        throw StableError(ErrorKind::TranslatorInvalid,
                          "translator containment fails at atom " +
                              std::to_string(a) + " on sample " +
                              std::to_string(t));
  }

  // level sets of the translated radius, largest probability first
  std::map<double, std::vector<std::size_t>> by_value;
  for (std::size_t a = 0; a < alg.atoms(); ++a)
    by_value[out.radius[a]].push_back(a);
  struct Level {
    double value;
    double prob;
    std::size_t first_atom;
  };
  std::vector<Level> levels;
  for (const auto& [v, atoms] : by_value) {
    double pr = 0.0;
    for (std::size_t a : atoms) pr += alg.prob(a);
    levels.push_back({v, pr, atoms.front()});
  }
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    if (a.prob != b.prob) return a.prob > b.prob;
    return a.first_atom < b.first_atom;
  });
  std::vector<double> tail(levels.size() + 1, 0.0);
  for (std::size_t k = levels.size(); k-- > 0;)
    tail[k] = tail[k + 1] + levels[k].prob;
  std::size_t m = 1;
  while (m < levels.size() && !(tail[m] < lam / 2.0)) ++m;
  double eps2 = levels.front().value;
  for (std::size_t k = 1; k < m; ++k) eps2 = std::min(eps2, levels[k].value);

  RefinementWitness w;
  w.members = out.members;
  w.eps = eps2;
  w.lam = lam / 2.0;
  w.levels_kept = m;
  return w;
}

StableSet closure(const StableSet& K, const SeminormFamily& F) {
  require_compatible(K.algebra(), F.algebra(), "closure");
  if (F.dim() != K.dim())
    throw StableError(ErrorKind::ArityError, "closure: dimension mismatch");
  // finite point sets and polytopes are closed in all three topologies
  return K;
}

}  // namespace stable
