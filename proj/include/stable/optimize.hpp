#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stable/basis.hpp"
#include "stable/convex.hpp"
#include "stable/metrics.hpp"
#include "stable/parallel.hpp"
#include "stable/sets.hpp"

namespace stable {

// A function (L0)^dim -> L0 whose value at an atom depends on the argument at
// that atom only (checked by sampling concatenations). Convexity/lsc are
// caller-asserted metadata.
class StableFunction {
 public:
  using Evaluator = std::function<L0Scalar(const L0Vector&)>;
  StableFunction(MeasureAlgebra alg, std::size_t dim, Evaluator eval,
                 bool convex = false, bool lsc = true, std::string name = "");
  // file-drivable function registry; see builtin_names()
  static StableFunction builtin(MeasureAlgebra alg, std::size_t dim,
                                const std::string& name,
                                const std::vector<double>& params);
  static const std::vector<std::string>& builtin_names();

  L0Scalar operator()(const L0Vector& x) const { return eval_(x); }
  const MeasureAlgebra& algebra() const { return alg_; }
  std::size_t dim() const { return dim_; }
  bool convex() const { return convex_; }
  bool lsc() const { return lsc_; }
  const std::string& name() const { return name_; }

 private:
  MeasureAlgebra alg_;
  std::size_t dim_;
  Evaluator eval_;
  bool convex_;
  bool lsc_;
  std::string name_;
};

// Samples concatenations 1_A x + 1_{A^c} y and requires the value to paste the
// same way, bitwise. Throws NotStable on a counterexample.
void spot_check_stable(const StableFunction& f, int samples, std::uint64_t seed);

struct ArgminResult {
  L0Vector x0;
  L0Scalar value;
};

// Per-atom minimization over a Points rep. Evaluates f on whole column
// vectors (one per point index), so the per-atom values follow the exact same
// code path a full selector enumeration would see. Ties pick the
// lexicographically smallest minimizer.
ArgminResult conditional_argmin(const StableFunction& f, const StableSet& k,
                                Exec exec = Exec::serial);

struct ContractionSpec {
  std::function<L0Vector(const L0Vector&)> map;
  L0Scalar rate;    // per-atom Lipschitz bound, 0 <= rate < 1
  StableSet domain;
  L0Scalar tol;     // strictly positive
  int max_iterations = 100000;
  int spot_samples = 16;  // sampled contraction / self-map checks
  std::uint64_t seed = 0;
};

struct FixpointResult {
  L0Vector z;
  StepNatural iters;  // per-atom count of map applications (>= 1)
  std::vector<L0Vector> trace;  // start, T(start), T^2(start), ... when recorded
};

// Iterates the whole vector and stops each atom at the first n with
// d(x_{n-1}, x_n) <= tol * (1 - rate): by the contraction estimate the point
// is then within tol of the fixed point. z glues the per-atom stop values, so
// it realizes the iterate at a step-natural index. Throws RateNotContractive,
// MaxIterations (with the unconverged atoms), ValidationError.
FixpointResult banach_fixpoint(const ContractionSpec& spec, const L0Vector& start,
                               bool record_trace = false);

struct SeparationCertificate {
  ModuleMap functional;  // single row per atom, unit Euclidean norm
  L0Scalar gap;          // r; vertices satisfy <y,b> - <y,a> >= 2r per atom
};

// Strict separation of two per-atom disjoint polytopes (d <= 3): the
// functional is the normalized closest-point difference, the gap is half the
// exact support gap on vertices. Throws NotDisjoint with the full event of
// atoms whose hulls meet.
SeparationCertificate strong_separation(const StableSet& s1, const StableSet& s2);

// Discrete Legendre transform: f*(y) = max over grid points x of <x,y> - f(x),
// per atom; +infinity table entries are skipped (at least one finite entry per
// atom required). The dual grid must share algebra and dimension.
FunctionTable fenchel_conjugate(const FunctionTable& f, const StableSet& dual_grid);
// Conjugate twice: back on the original grid. Satisfies f** <= f.
FunctionTable fenchel_biconjugate(const FunctionTable& f, const StableSet& dual_grid);

struct PolarResult {
  bool bounded = false;                 // polar bounded on every atom
  std::optional<StableSet> polar;       // Polytope rep, present when bounded
  std::vector<geom::VRep> polar_vrep;   // per-atom polar geometry, always set
  std::vector<std::vector<geom::Halfspace>> polar_halfspaces;  // defining system
  std::optional<StableSet> bipolar;     // Polytope rep; equals conv(S ∪ {0})
};

// Polar {y : <x,y> <= 1 for all x in S_atom} and its polar again (d <= 3).
// The polar is bounded iff 0 is interior to conv(S); the bipolar is always a
// polytope.
PolarResult polar_and_bipolar(const StableSet& s);

}  // namespace stable
