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
#include "henig/cones.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "henig/error.h"
#include "henig/linprog.h"

namespace henig {
namespace {

// min ||sum alpha_k g_k - v||_inf over alpha >= 0.
double ConicResidual(const Mat& generators, std::span<const double> v) {
  const int p = static_cast<int>(v.size());
  LpBuilder lp;
  const int alpha = lp.AddVariables(static_cast<int>(generators.size()), 0.0);
  const int s = lp.AddVariable(0.0);
  for (int j = 0; j < p; ++j) {
    LpRow row;
    for (std::size_t k = 0; k < generators.size(); ++k) {
      if (generators[k][j] != 0.0) {
        row.push_back({alpha + static_cast<int>(k), generators[k][j]});
      }
    }
    LpRow upper = row;
    upper.push_back({s, -1.0});
    lp.AddLessEqual(upper, v[j]);
    row.push_back({s, 1.0});
    lp.AddGreaterEqual(row, v[j]);
  }
  lp.AddObjective(s, -1.0);
  const LpOutcome out = SolveLp(lp.Build());
  if (!out.optimal()) throw Error(ErrorCode::kInternal, "cone residual LP");
  return -out.value;
}

void CheckRows(const Mat& rows, const char* what) {
  if (rows.empty()) {
    throw Error(ErrorCode::kInvalidInput, std::string(what) + " list is empty");
  }
  const std::size_t p = rows.front().size();
  if (p == 0) throw Error(ErrorCode::kInvalidInput, "cone dimension is 0");
  bool nonzero = false;
  for (const Vec& r : rows) {
    CheckDim(r.size(), p, what);
    nonzero = nonzero || NormInf(r) > 0.0;
  }
  if (!nonzero) {
    throw Error(ErrorCode::kInvalidInput,
                std::string("cone needs a nonzero ") + what);
  }
}

}  // namespace

HenigCone::HenigCone(int m, double eps) : m_(m), eps_(eps) {
  if (m < 2) throw Error(ErrorCode::kInvalidInput, "dilating cone needs m >= 2");
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidInput, "dilating cone needs eps > 0");
  }
}

Vec HenigCone::Generator(int i) const {
  Vec g(m_, eps_);
  g[i] += 1.0;
  return g;
}

bool HenigCone::Contains(std::span<const double> v, double tol) const {
  CheckDim(v.size(), m_, "objective-space vector");
  Mat gens;
  for (int i = 0; i < m_; ++i) gens.push_back(Generator(i));
  return ConicResidual(gens, v) <= tol;
}

bool HenigCone::PolarContains(std::span<const double> v, double tol) const {
  CheckDim(v.size(), m_, "objective-space vector");
  double total = 0.0;
  for (double x : v) total += x;
  for (int i = 0; i < m_; ++i) {
    if (v[i] + eps_ * total < -tol) return false;
  }
  return true;
}

bool HenigCone::InMinusPolar(std::span<const double> v, double tol) const {
  return PolarContains(Negate(v), tol);
}

PolyhedralCone PolyhedralCone::NonnegOrthant(int p) {
  if (p < 1) throw Error(ErrorCode::kInvalidInput, "orthant dim < 1");
  PolyhedralCone c;
  c.dim_ = p;
  c.has_generators_ = c.has_inequalities_ = c.orthant_ = true;
  for (int i = 0; i < p; ++i) {
    Vec e(p, 0.0);
    e[i] = 1.0;
    c.generators_.push_back(e);
    c.inequalities_.push_back(std::move(e));
  }
  return c;
}

PolyhedralCone PolyhedralCone::FromGenerators(Mat generators) {
  CheckRows(generators, "generator");
  PolyhedralCone c;
  c.dim_ = static_cast<int>(generators.front().size());
  c.has_generators_ = true;
  c.generators_ = std::move(generators);
  return c;
}

PolyhedralCone PolyhedralCone::FromInequalities(Mat h) {
  CheckRows(h, "inequality row");
  PolyhedralCone c;
  c.dim_ = static_cast<int>(h.front().size());
  c.has_inequalities_ = true;
  c.inequalities_ = std::move(h);
  return c;
}

bool PolyhedralCone::Contains(std::span<const double> y, double tol) const {
  CheckDim(y.size(), dim_, "constraint-space vector");
  if (has_inequalities_) {
    for (const Vec& row : inequalities_) {
      if (Dot(row, y) < -tol) return false;
    }
    return true;
  }
  return ConicResidual(generators_, y) <= tol;
}

bool PolyhedralCone::InMinusCone(std::span<const double> y, double tol) const {
  return Contains(Negate(y), tol);
}

bool PolyhedralCone::PolarContains(std::span<const double> ystar,
                                   double tol) const {
  CheckDim(ystar.size(), dim_, "constraint-space functional");
  if (!has_generators_) {
    throw Error(ErrorCode::kGeneratorFormRequired,
                "polar membership needs the generator form of the cone");
  }
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const Vec& g) { return Dot(ystar, g) >= -tol; });
}

Polyhedron PolyhedralCone::MinusConeAsPolyhedron() const {
  if (!has_inequalities_) {
    throw Error(ErrorCode::kInequalityFormRequired,
                "this operation needs the inequality form of the cone");
  }
  return Polyhedron(dim_, inequalities_, Vec(inequalities_.size(), 0.0));
}

Membership MinusConeEpsNormalContains(const PolyhedralCone& cone,
                                      std::span<const double> ybar, double eps,
                                      std::span<const double> ystar,
                                      double tol) {
  if (cone.has_inequalities()) {
    return EpsNormalContains(cone.MinusConeAsPolyhedron(), ybar, eps, ystar,
                             tol);
  }
  if (!cone.InMinusCone(ybar)) {
    throw Error(ErrorCode::kPointOutsideDomain, "base point outside -Y+");
  }
  if (!cone.PolarContains(ystar, tol)) {
    return Membership{false, ExtReal::PlusInfinity()};
  }
  const double slack = -Dot(ystar, ybar) - eps;
  return Membership{slack <= tol, slack};
}

}  // namespace henig
