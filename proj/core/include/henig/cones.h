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
#ifndef HENIG_CONES_H_
#define HENIG_CONES_H_

#include <span>

#include "henig/convex_kernel.h"
#include "henig/linear_algebra.h"
#include "henig/polyhedron.h"

namespace henig {

// Slack for the finite generator tests of polar membership.
inline constexpr double kConeTolerance = 1e-12;

// K_eps = cone{ e_i + eps * e : i = 1..m }, e = (1, ..., 1).
class HenigCone {
 public:
  HenigCone(int m, double eps);

  int dim() const { return m_; }
  double eps() const { return eps_; }
  Vec Generator(int i) const;

  // Conic-combination feasibility by LP.
  bool Contains(std::span<const double> v,
                double tol = kLpFeasibilityTolerance) const;
  // <v, e_i + eps e> >= -tol for every generator.
  bool PolarContains(std::span<const double> v,
                     double tol = kConeTolerance) const;
  bool InMinusPolar(std::span<const double> v,
                    double tol = kConeTolerance) const;

 private:
  int m_;
  double eps_;
};

// Ordering cone Y+ in R^p, given by generators (conic hull), by an
// inequality form { y : H y >= 0 }, or both (the non-negative orthant).
class PolyhedralCone {
 public:
  static PolyhedralCone NonnegOrthant(int p);
  static PolyhedralCone FromGenerators(Mat generators);
  static PolyhedralCone FromInequalities(Mat h);

  int dim() const { return dim_; }
  bool has_generators() const { return has_generators_; }
  bool has_inequalities() const { return has_inequalities_; }
  bool is_orthant() const { return orthant_; }
  const Mat& generators() const { return generators_; }
  const Mat& inequalities() const { return inequalities_; }

  bool Contains(std::span<const double> y,
                double tol = kLpFeasibilityTolerance) const;
  bool InMinusCone(std::span<const double> y,
                   double tol = kLpFeasibilityTolerance) const;
  // y* in Y+*: <y*, g> >= -tol for every generator g. Throws
  // Error(kGeneratorFormRequired) for inequality-only cones.
  bool PolarContains(std::span<const double> ystar,
                     double tol = kMembershipTolerance) const;
  // -Y+ = { y : H y <= 0 }. Throws Error(kInequalityFormRequired).
  Polyhedron MinusConeAsPolyhedron() const;

 private:
  PolyhedralCone() = default;

  int dim_ = 0;
  bool has_generators_ = false;
  bool has_inequalities_ = false;
  bool orthant_ = false;
  Mat generators_;
  Mat inequalities_;
};

// y* in N_eps(ybar, -Y+): sigma_{-Y+}(y*) - <y*, ybar> <= eps. Uses the
// inequality form when present, otherwise y* in Y+* and -<y*, ybar> <= eps.
Membership MinusConeEpsNormalContains(const PolyhedralCone& cone,
                                      std::span<const double> ybar, double eps,
                                      std::span<const double> ystar,
                                      double tol = kMembershipTolerance);

}  // namespace henig

#endif  // HENIG_CONES_H_
