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
#ifndef HENIG_FRACTIONAL_H_
#define HENIG_FRACTIONAL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "henig/cones.h"
#include "henig/convex_fn.h"
#include "henig/grid.h"
#include "henig/linear_algebra.h"
#include "henig/polyhedron.h"

namespace henig {

// |g_i(xbar)| below this makes the ratio values undefined.
inline constexpr double kDenominatorTolerance = 1e-9;

// A ratio f_i / g_i. The denominator is stored as the convex function -g_i.
struct Objective {
  ConvexFn f;
  ConvexFn neg_g;
};

// minimize (f_1/g_1, ..., f_m/g_m)(x) subject to x in C, h(x) in -Y+.
class FractionalProblem {
 public:
  FractionalProblem(int n, std::vector<Objective> objectives,
                    std::vector<ConvexFn> h, PolyhedralCone cone,
                    Polyhedron constraint_set);

  int n() const { return n_; }
  int m() const { return static_cast<int>(objectives_.size()); }
  int p() const { return static_cast<int>(h_.size()); }
  const std::vector<Objective>& objectives() const { return objectives_; }
  const std::vector<ConvexFn>& h() const { return h_; }
  const PolyhedralCone& cone() const { return cone_; }
  const Polyhedron& constraint_set() const { return constraint_set_; }

  // h(x), or nullopt if some component is +inf at x.
  std::optional<Vec> EvaluateH(std::span<const double> x) const;
  double Numerator(int i, std::span<const double> x) const;
  double Denominator(int i, std::span<const double> x) const;

 private:
  int n_;
  std::vector<Objective> objectives_;
  std::vector<ConvexFn> h_;
  PolyhedralCone cone_;
  Polyhedron constraint_set_;
};

bool Feasible(const FractionalProblem& prob, std::span<const double> x,
              double tol = kLpFeasibilityTolerance);

// Feasible grid points in lexicographic order.
std::vector<Vec> FeasibleGridPoints(const FractionalProblem& prob,
                                    const GridSpec& grid);

// Feasible grid points where f_i < 0 or g_i <= 0 for some i, reported as
// human-readable notes (at most 'limit').
std::vector<std::string> StandingAssumptionWarnings(
    const FractionalProblem& prob, const GridSpec& grid, int limit = 5);

// nu_i = f_i(xbar) / g_i(xbar). Throws Error(kDenominatorNearZero).
Vec NuValues(const FractionalProblem& prob, std::span<const double> xbar);

// c * fn as a ConvexFn: Scaled(c, fn) for c >= 0; for c < 0 fn must be
// affine. Throws Error(kUnsupportedData) otherwise.
ConvexFn ScaleTerm(double c, const ConvexFn& fn);

// phi_i = f_i + nu_i * (-g_i), with the two summands kept apart.
struct ParametricProblem {
  const FractionalProblem* base = nullptr;
  Vec xbar;
  Vec nu;
  std::vector<ConvexFn> scaled_neg_g;  // nu_i * (-g_i)

  Vec Phi(std::span<const double> x) const;
};

// Builds the reformulation and checks phi_i(xbar) = 0. The problem must
// outlive the result.
ParametricProblem MakeParametricProblem(const FractionalProblem& prob,
                                        std::span<const double> xbar);

std::vector<double> DefaultEpsLadder();

struct LadderStep {
  double eps = 0.0;
  bool refuted = false;  // A counterexample exists on the grid at this eps.
  Vec counterexample;
};

struct EfficiencyVerdict {
  enum class Kind { kProperlyEfficient, kDominated, kInconclusive };

  Kind kind = Kind::kInconclusive;
  // Witness eps for kProperlyEfficient, the smallest ladder eps for
  // kDominated, the finest refuted eps for kInconclusive.
  double eps = 0.0;
  Vec counterexample;
  std::string reason;
  std::string grid;
  std::size_t feasible_samples = 0;
  // One entry per ladder eps actually scanned, largest first.
  std::vector<LadderStep> scan;
};

const char* VerdictName(EfficiencyVerdict::Kind kind);

struct ScanOptions {
  // 0 means std::thread::hardware_concurrency().
  int threads = 0;
};

// Grid oracle for Henig proper efficiency of xbar: looks for feasible x
// whose ratio difference (f_i(x)/g_i(x) - nu_i)_i is a nonzero element of
// -K_eps*. A kProperlyEfficient verdict means "no counterexample on this
// grid". Throws Error(kInvalidInput) if xbar is infeasible.
EfficiencyVerdict HenigCheckBruteforce(const FractionalProblem& prob,
                                       std::span<const double> xbar,
                                       std::vector<double> ladder,
                                       const GridSpec& grid,
                                       const ScanOptions& options = {});

// The same oracle applied to the parametric objective vector phi(x).
EfficiencyVerdict ParametricCheckBruteforce(const FractionalProblem& prob,
                                            std::span<const double> xbar,
                                            std::vector<double> ladder,
                                            const GridSpec& grid,
                                            const ScanOptions& options = {});

struct EquivalenceResult {
  bool agree = false;
  EfficiencyVerdict original;
  EfficiencyVerdict parametric;
};

EquivalenceResult ParametricEquivalenceCheck(const FractionalProblem& prob,
                                             std::span<const double> xbar,
                                             const std::vector<double>& ladder,
                                             const GridSpec& grid,
                                             const ScanOptions& options = {});

}  // namespace henig

#endif  // HENIG_FRACTIONAL_H_
