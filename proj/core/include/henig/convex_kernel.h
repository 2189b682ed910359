// Copyright 2026 The Henig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef HENIG_CONVEX_KERNEL_H_
#define HENIG_CONVEX_KERNEL_H_

#include <optional>
#include <span>
#include <vector>

#include "henig/convex_fn.h"
#include "henig/ext_real.h"
#include "henig/grid.h"
#include "henig/linear_algebra.h"
#include "henig/linprog.h"
#include "henig/polyhedron.h"

namespace henig {

// Default slack for set-membership verdicts. Separate from the LP
// tolerances; every verdict also carries the raw slack.
inline constexpr double kMembershipTolerance = 1e-7;

struct Membership {
  bool holds = false;
  // lhs - rhs of the defining inequality; holds iff slack <= tol.
  ExtReal slack;

  explicit operator bool() const { return holds; }
};

// f*(x*) = sup_x <x*, x> - f(x). Exact LP value for polyhedral data;
// Scaled(0, .) gives 0 at x* = 0 and +inf elsewhere. Throws
// Error(kConjugateUnsupported) for black boxes with positive weight.
ExtReal Conjugate(const ConvexFn& f, std::span<const double> xstar);
ExtReal Conjugate(const PolyhedralFn& f, std::span<const double> xstar);

// sigma_C(x*) = sup_{x in C} <x*, x>.
ExtReal SupportFunction(const Polyhedron& set, std::span<const double> xstar);

// (x*, r) in epi f*.
Membership EpiConjugateContains(const ConvexFn& f,
                                std::span<const double> xstar, double r,
                                double tol = kMembershipTolerance);

// x* in the eps-subdifferential of f at xbar, tested in Young-Fenchel form
// f*(x*) + f(xbar) - <x*, xbar> <= eps. Throws kPointOutsideDomain when
// f(xbar) = +inf.
Membership EpsSubdiffContains(const ConvexFn& f, std::span<const double> xbar,
                              double eps, std::span<const double> xstar,
                              double tol = kMembershipTolerance);

// x* in N_eps(xbar, C): sigma_C(x*) - <x*, xbar> <= eps.
Membership EpsNormalContains(const Polyhedron& set,
                             std::span<const double> xbar, double eps,
                             std::span<const double> xstar,
                             double tol = kMembershipTolerance);

// Gradient of the lowest-index piece active at xbar; always an exact
// subgradient.
Vec SubdiffElement(const PolyhedralFn& f, std::span<const double> xbar);

// The eps-subdifferential of a full-domain max-of-affine function at xbar as
// the image of { mu >= 0 : sum mu = 1, <gaps, mu> <= eps } under
// mu -> sum mu_k slope_k.
struct EpsSubdiffPolytope {
  int dim = 0;
  Mat slopes;
  // f(xbar) - <a_k, xbar> - b_k, one per piece (non-negative).
  Vec gaps;
  double eps = 0.0;

  Vec Point(std::span<const double> mu) const;
  // Infinity-norm distance from x* to the set, by LP.
  double Distance(std::span<const double> xstar) const;
  bool Contains(std::span<const double> xstar,
                double tol = kMembershipTolerance) const;
};

// Throws kUnsupportedDomain when f has a restricted domain.
EpsSubdiffPolytope MakeEpsSubdiffPolytope(const PolyhedralFn& f,
                                          std::span<const double> xbar,
                                          double eps);

// LP encoding of subgradient-type sets of a polyhedral function f with
// pieces (a_k, b_k) and domain {A x <= b, E x = d}:
//
//   x*     = sum_k mu_k a_k + A^T pi + E^T rho,   mu, pi >= 0
//   sum mu = 1                (or = the 'mass' variable, for c * f)
//   height = -sum mu_k b_k + <pi, b> + <rho, d>   >= f*(x*)
//   gap    = height + f(xbar) - <x*, xbar>
//
// so gap <= eps describes the eps-subdifferential at xbar and
// height <= r describes epi f*. With the mass variable c >= 0 the same rows
// describe c * f; restricted domains then contribute normal-cone terms even
// at c = 0, so callers that need the zero-function convention must use
// full-domain data.
struct SubgradientEncoding {
  std::vector<LpRow> functional;  // One expression per coordinate of x*.
  LpRow height;
  LpRow gap;  // Empty when no base point was given.
};

SubgradientEncoding EncodeSubgradients(LpBuilder& lp, const PolyhedralFn& f,
                                       std::span<const double> xbar = {},
                                       std::optional<int> mass_var = {});

// Value of an LpRow at an LP solution.
double EvaluateRow(const LpRow& row, std::span<const double> solution);

struct BrOptions {
  // Rounds of refinement (extra cut directions, tighter inner radius)
  // attempted before giving up.
  int max_refinements = 4;
  // Relative rounding allowance used when checking the three bounds.
  double rounding_slack = 1e-12;
};

struct BrResult {
  Vec point;
  Vec subgradient;
  double distance = 0.0;       // ||x - xbar||_2
  double dual_distance = 0.0;  // ||x* - xbar*||_2
  double value_gap = 0.0;      // |f(x) - f(xbar) - <x*, x - xbar>|
  int refinements = 0;
};

// Given xbar* in the eps-subdifferential of f at xbar, returns x in dom f
// and x* in the subdifferential at x with ||x - xbar|| <= sqrt(eps),
// ||x* - xbar*|| <= sqrt(eps) and value gap <= 2 eps (Euclidean norms).
// Throws Error(kBRSearchFailed) when no verified pair is found.
BrResult BrRegularize(const ConvexFn& f, std::span<const double> xbar,
                      double eps, std::span<const double> xbarstar,
                      const BrOptions& options = {});

// Lower bound on f*(x*) from a grid: max of <x*, x> - f(x) over grid points
// where f is finite. Throws kInvalidInput if f is +inf on the whole grid.
double BruteConjugate(const ConvexFn& f, std::span<const double> xstar,
                      const GridSpec& grid);

}  // namespace henig

#endif  // HENIG_CONVEX_KERNEL_H_
