#pragma once

#include <cstddef>
#include <vector>

namespace stable::geom {

using Pt = std::vector<double>;

// Convex hull vertices in dimension 1..3. d=2 uses an exact monotone chain
// (CCW order, collinear interior points dropped); d=1 and d=3 return extreme
// points found by the min-norm test. Duplicate input points are merged first.
std::vector<Pt> hull_vertices(const std::vector<Pt>& pts, std::size_t dim);

// Monotone-chain hull for d=2, exposed for use as an independent oracle.
std::vector<Pt> hull2d(std::vector<Pt> pts);

// min ||sum_i lambda_i w_i||^2 over the simplex, by away-step Frank-Wolfe.
// Linear convergence on polytopes; the gap bound certifies the value.
struct MinNorm {
  std::vector<double> lambda;
  Pt point;
  double dist2 = 0.0;
  double gap = 0.0;  // remaining duality gap at exit
};
MinNorm min_norm_in_hull(const std::vector<Pt>& w, std::size_t dim,
                         int max_iter = 20000);

// Squared distance from q to conv(pts).
double dist2_to_hull(const Pt& q, const std::vector<Pt>& pts, std::size_t dim);

// Halfspace a.y <= b.
struct Halfspace {
  Pt a;
  double b = 0.0;
};

// V-representation of {y : a_i.y <= b_i}: vertices + extreme rays + lineality
// directions (each line listed once; both signs are feasible). Computed by
// enumerating active sets in the homogenization cone after splitting off its
// lineality space, so unbounded and flat polyhedra come out exactly.
struct VRep {
  std::vector<Pt> vertices;
  std::vector<Pt> rays;
  std::vector<Pt> lines;
  bool empty() const { return vertices.empty() && rays.empty() && lines.empty(); }
  bool bounded() const { return rays.empty() && lines.empty(); }
};
VRep polyhedron_vr(const std::vector<Halfspace>& hs, std::size_t dim);

// Symmetric Hausdorff distance between two finite point clouds (Euclidean).
double hausdorff(const std::vector<Pt>& a, const std::vector<Pt>& b);

}  // namespace stable::geom
