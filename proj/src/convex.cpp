#include "stable/convex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "stable/errors.hpp"

namespace stable::geom {

namespace {

double dot(const Pt& a, const Pt& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2sq(const Pt& a) { return dot(a, a); }

std::vector<Pt> dedup_exact(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

std::vector<Pt> hull2d(std::vector<Pt> pts) {
  pts = dedup_exact(std::move(pts));
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Pt> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 2) {  // all collinear: keep the two lexicographic extremes
    return {pts.front(), pts.back()};
  }
  return h;
}

MinNorm min_norm_in_hull(const std::vector<Pt>& w, std::size_t dim, int max_iter) {
  MinNorm out;
  const std::size_t n = w.size();
  if (n == 0) throw StableError(ErrorKind::ArityError, "min_norm_in_hull: no points");
  double scale2 = 0.0;
  for (const Pt& p : w) scale2 = std::max(scale2, norm2sq(p));
  if (scale2 == 0.0) {
    out.lambda.assign(n, 0.0);
    out.lambda[0] = 1.0;
    out.point.assign(dim, 0.0);
    return out;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (norm2sq(w[i]) < norm2sq(w[best])) best = i;
  std::vector<double> lambda(n, 0.0);
  lambda[best] = 1.0;
  Pt p = w[best];

  const double stop = 1e-14 * scale2;
  for (int it = 0; it < max_iter; ++it) {
    // gradient of ||p||^2 w.r.t. lambda_i is 2 <p, w_i>
    std::size_t s = 0, v = n;
    double gmin = dot(p, w[0]), gmax = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = dot(p, w[i]);
      if (g < gmin) {
        gmin = g;
        s = i;
      }
      if (lambda[i] > 0.0 && g > gmax) {
        gmax = g;
        v = i;
      }
    }
    const double pp = norm2sq(p);
    out.gap = 2.0 * (pp - gmin);
    if (out.gap <= stop || pp <= 1e-30 * scale2) break;

    // toward-vertex direction vs away direction, pick the steeper descent
    const bool away = (v < n) && (gmax - pp > pp - gmin);
    Pt d(dim);
    double gamma_max;
    if (!away) {
      for (std::size_t j = 0; j < dim; ++j) d[j] = w[s][j] - p[j];
      gamma_max = 1.0;
    } else {
      for (std::size_t j = 0; j < dim; ++j) d[j] = p[j] - w[v][j];
      gamma_max = lambda[v] >= 1.0 ? 1e300 : lambda[v] / (1.0 - lambda[v]);
    }
    const double dd = norm2sq(d);
    if (dd <= 0.0) break;
    double gamma = -dot(p, d) / dd;
    gamma = std::clamp(gamma, 0.0, gamma_max);
    if (gamma <= 0.0) break;
    if (!away) {
      for (std::size_t i = 0; i < n; ++i) lambda[i] *= (1.0 - gamma);
      lambda[s] += gamma;
    } else {
      for (std::size_t i = 0; i < n; ++i) lambda[i] *= (1.0 + gamma);
      lambda[v] -= gamma;
      if (lambda[v] < 1e-18) lambda[v] = 0.0;
    }
    // refresh p from lambda to keep drift out of the certificate
    if ((it & 63) == 63) {
      p.assign(dim, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        if (lambda[i] > 0.0)
          for (std::size_t j = 0; j < dim; ++j) p[j] += lambda[i] * w[i][j];
    } else {
      for (std::size_t j = 0; j < dim; ++j) p[j] += gamma * d[j];
    }
  }
  p.assign(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (lambda[i] > 0.0)
      for (std::size_t j = 0; j < dim; ++j) p[j] += lambda[i] * w[i][j];
  out.lambda = std::move(lambda);
  out.dist2 = norm2sq(p);
  out.point = std::move(p);
  return out;
}

double dist2_to_hull(const Pt& q, const std::vector<Pt>& pts, std::size_t dim) {
  std::vector<Pt> shifted(pts.size(), Pt(dim));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) shifted[i][j] = pts[i][j] - q[j];
  return min_norm_in_hull(shifted, dim).dist2;
}

std::vector<Pt> hull_vertices(const std::vector<Pt>& pts, std::size_t dim) {
  if (dim == 0 || dim > 3)
    throw StableError(ErrorKind::DimensionUnsupported,
                      "hull_vertices supports dimensions 1..3");
  std::vector<Pt> uniq = dedup_exact(pts);
  if (uniq.size() <= 1) return uniq;
  if (dim == 1) {
    return uniq.size() == 1 ? uniq : std::vector<Pt>{uniq.front(), uniq.back()};
  }
  if (dim == 2) return hull2d(std::move(uniq));
  // d=3: keep points with positive distance to the hull of the others
  double scale = 1.0;
  for (const Pt& p : uniq)
    for (double x : p) scale = std::max(scale, std::fabs(x));
  const double thr2 = 1e-18 * scale * scale;
  std::vector<Pt> out;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    std::vector<Pt> others;
    others.reserve(uniq.size() - 1);
    for (std::size_t j = 0; j < uniq.size(); ++j)
      if (j != i) others.push_back(uniq[j]);
    if (dist2_to_hull(uniq[i], others, dim) > thr2) out.push_back(uniq[i]);
  }
  return out;
}

namespace {

// Gaussian elimination helpers on small dense row-major matrices.

// Orthonormal basis of the row space (Gram-Schmidt with re-orthogonalization).
std::vector<Pt> row_space_basis(const std::vector<Pt>& rows, std::size_t d) {
  std::vector<Pt> q;
  for (const Pt& r : rows) {
    Pt v = r;
    for (int pass = 0; pass < 2; ++pass)
      for (const Pt& u : q) {
        const double c = dot(v, u);
        for (std::size_t j = 0; j < d; ++j) v[j] -= c * u[j];
      }
    const double nn = std::sqrt(norm2sq(v));
    double scale = std::sqrt(std::max(norm2sq(r), 1.0));
    if (nn > 1e-10 * scale) {
      for (std::size_t j = 0; j < d; ++j) v[j] /= nn;
      q.push_back(std::move(v));
    }
  }
  return q;
}

// Orthonormal basis of the null space: complement of the row space.
std::vector<Pt> null_space_basis(const std::vector<Pt>& rows, std::size_t d) {
  std::vector<Pt> q = row_space_basis(rows, d);
  std::vector<Pt> out;
  for (std::size_t e = 0; e < d; ++e) {
    Pt v(d, 0.0);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Pt& u : q) {
        const double c = dot(v, u);
        for (std::size_t j = 0; j < d; ++j) v[j] -= c * u[j];
      }
      for (const Pt& u : out) {
        const double c = dot(v, u);
        for (std::size_t j = 0; j < d; ++j) v[j] -= c * u[j];
      }
    }
    const double nn = std::sqrt(norm2sq(v));
    if (nn > 1e-10) {
      for (std::size_t j = 0; j < d; ++j) v[j] /= nn;
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

VRep polyhedron_vr(const std::vector<Halfspace>& hs, std::size_t dim) {
  if (dim == 0 || dim > 3)
    throw StableError(ErrorKind::DimensionUnsupported,
                      "polyhedron_vr supports dimensions 1..3");
  const std::size_t D = dim + 1;

  // Homogenize: P = {y : a.y <= b}  <->  cone {(y,t) : a.y - b t <= 0, t >= 0};
  // vertices are rays with t > 0, recession directions rays with t = 0.
  std::vector<Pt> rows;
  for (const Halfspace& h : hs) {
    if (h.a.size() != dim)
      throw StableError(ErrorKind::ArityError, "halfspace of wrong dimension");
    Pt r(D);
    double scale = std::fabs(h.b);
    for (std::size_t j = 0; j < dim; ++j) scale = std::max(scale, std::fabs(h.a[j]));
    if (scale == 0.0) continue;  // 0.y <= 0 or 0.y <= b(>0): vacuous; b<0 infeasible
    for (std::size_t j = 0; j < dim; ++j) r[j] = h.a[j] / scale;
    r[dim] = -h.b / scale;
    rows.push_back(std::move(r));
  }
  {
    Pt t_row(D, 0.0);
    t_row[dim] = -1.0;  // t >= 0
    rows.push_back(std::move(t_row));
  }
  for (const Halfspace& h : hs) {
    bool zero = true;
    for (double x : h.a)
      if (x != 0.0) zero = false;
    if (zero && h.b < 0.0) return VRep{};  // plainly infeasible
  }

  VRep out;
  // Lineality of the homogenization cone = null space of the constraint
  // matrix. The t >= 0 row is always present, so lines have t = 0.
  std::vector<Pt> lines = null_space_basis(rows, D);
  for (const Pt& l : lines) {
    Pt y(l.begin(), l.begin() + dim);
    out.lines.push_back(std::move(y));
  }

  std::vector<Pt> q = row_space_basis(rows, D);  // pointed part lives here
  const std::size_t qd = q.size();
  if (qd == 0) return out;  // whole space

  // Constraint rows in Q-coordinates.
  std::vector<Pt> mq(rows.size(), Pt(qd));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < qd; ++k) mq[i][k] = dot(rows[i], q[k]);

  auto lift = [&](const Pt& w) {
    Pt u(D, 0.0);
    for (std::size_t k = 0; k < qd; ++k)
      for (std::size_t j = 0; j < D; ++j) u[j] += w[k] * q[k][j];
    return u;
  };
  auto feasible = [&](const Pt& u) {
    for (const Pt& r : rows)
      if (dot(r, u) > 1e-9) return false;
    return true;
  };

  // Every extreme ray of the pointed part solves some (qd-1)-subset of
  // constraints with a one-dimensional null space; enumerate them all.
  std::vector<Pt> candidates;
  auto consider = [&](const Pt& w) {
    Pt u = lift(w);
    const double nn = std::sqrt(norm2sq(u));
    if (nn < 1e-12) return;
    for (std::size_t j = 0; j < D; ++j) u[j] /= nn;
    for (int sign = 0; sign < 2; ++sign) {
      if (feasible(u)) {
        bool dup = false;
        for (const Pt& c : candidates) {
          double diff = 0.0;
          for (std::size_t j = 0; j < D; ++j)
            diff = std::max(diff, std::fabs(c[j] - u[j]));
          if (diff < 1e-8) {
            dup = true;
            break;
          }
        }
        if (!dup) candidates.push_back(u);
      }
      for (std::size_t j = 0; j < D; ++j) u[j] = -u[j];
    }
  };

  if (qd == 1) {
    consider(Pt{1.0});
  } else {
    const std::size_t m = rows.size();
    const std::size_t k = qd - 1;  // qd <= 4, m is desk-scale
    if (m >= k) {
      std::vector<std::size_t> comb(k);
      for (std::size_t i = 0; i < k; ++i) comb[i] = i;
      for (;;) {
        std::vector<Pt> sub;
        sub.reserve(k);
        for (std::size_t i : comb) sub.push_back(mq[i]);
        std::vector<Pt> ns = null_space_basis(sub, qd);
        if (ns.size() == 1) consider(ns[0]);
        // next k-combination of {0..m-1}
        std::size_t i = k;
        while (i > 0 && comb[i - 1] == m - k + (i - 1)) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
  }

  for (const Pt& u : candidates) {
    const double t = u[dim];
    if (t > 1e-9) {
      Pt y(dim);
      for (std::size_t j = 0; j < dim; ++j) y[j] = u[j] / t;
      out.vertices.push_back(std::move(y));
    } else {
      Pt y(u.begin(), u.begin() + dim);
      const double nn = std::sqrt(norm2sq(y));
      if (nn > 1e-12) {
        for (double& x : y) x /= nn;
        out.rays.push_back(std::move(y));
      }
    }
  }
  return out;
}

double hausdorff(const std::vector<Pt>& a, const std::vector<Pt>& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty() ? 0.0 : 1e300;
  auto one_sided = [](const std::vector<Pt>& from, const std::vector<Pt>& to) {
    double worst = 0.0;
    for (const Pt& p : from) {
      double best = 1e300;
      for (const Pt& q : to) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
          const double d = p[j] - q[j];
          s += d * d;
        }
        best = std::min(best, s);
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace stable::geom
