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
#include "henig/polyhedron.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "henig/error.h"
#include "henig/linprog.h"

namespace henig {
namespace {

double RowScale(double rhs) { return 1.0 + std::fabs(rhs); }

}  // namespace

Polyhedron::Polyhedron(int dim, Mat ineq_lhs, Vec ineq_rhs, Mat eq_lhs,
                       Vec eq_rhs)
    : dim_(dim),
      ineq_lhs_(std::move(ineq_lhs)),
      ineq_rhs_(std::move(ineq_rhs)),
      eq_lhs_(std::move(eq_lhs)),
      eq_rhs_(std::move(eq_rhs)) {
  if (dim_ < 1) throw Error(ErrorCode::kInvalidInput, "polyhedron dim < 1");
  CheckDim(ineq_rhs_.size(), ineq_lhs_.size(), "polyhedron b");
  CheckDim(eq_rhs_.size(), eq_lhs_.size(), "polyhedron d");
  for (const Vec& row : ineq_lhs_) CheckDim(row.size(), dim_, "polyhedron A row");
  for (const Vec& row : eq_lhs_) CheckDim(row.size(), dim_, "polyhedron E row");
  if (is_whole_space()) return;

  LinearProgram lp;
  lp.objective.assign(dim_, 0.0);
  lp.ineq_lhs = ineq_lhs_;
  lp.ineq_rhs = ineq_rhs_;
  lp.eq_lhs = eq_lhs_;
  lp.eq_rhs = eq_rhs_;
  if (SolveLp(lp).status == LpStatus::kInfeasible) {
    throw Error(ErrorCode::kEmptyPolyhedron, "polyhedron is empty");
  }
}

Polyhedron Polyhedron::Whole(int dim) { return Polyhedron(dim, {}, {}); }

Polyhedron Polyhedron::Box(const std::vector<ExtReal>& lower,
                           const std::vector<ExtReal>& upper) {
  CheckDim(upper.size(), lower.size(), "box upper");
  const int n = static_cast<int>(lower.size());
  Mat a;
  Vec b;
  for (int i = 0; i < n; ++i) {
    if (lower[i].is_finite()) {
      Vec row(n, 0.0);
      row[i] = -1.0;
      a.push_back(std::move(row));
      b.push_back(-lower[i].value());
    }
    if (upper[i].is_finite()) {
      Vec row(n, 0.0);
      row[i] = 1.0;
      a.push_back(std::move(row));
      b.push_back(upper[i].value());
    }
  }
  return Polyhedron(n, std::move(a), std::move(b));
}

double Polyhedron::Violation(std::span<const double> x) const {
  CheckDim(x.size(), dim_, "point");
  double worst = 0.0;
  for (std::size_t i = 0; i < ineq_lhs_.size(); ++i) {
    worst = std::max(worst, Dot(ineq_lhs_[i], x) - ineq_rhs_[i]);
  }
  for (std::size_t i = 0; i < eq_lhs_.size(); ++i) {
    worst = std::max(worst, std::fabs(Dot(eq_lhs_[i], x) - eq_rhs_[i]));
  }
  return worst;
}

bool Polyhedron::Contains(std::span<const double> x, double tol) const {
  CheckDim(x.size(), dim_, "point");
  for (std::size_t i = 0; i < ineq_lhs_.size(); ++i) {
    if (Dot(ineq_lhs_[i], x) - ineq_rhs_[i] > tol * RowScale(ineq_rhs_[i])) {
      return false;
    }
  }
  for (std::size_t i = 0; i < eq_lhs_.size(); ++i) {
    if (std::fabs(Dot(eq_lhs_[i], x) - eq_rhs_[i]) >
        tol * RowScale(eq_rhs_[i])) {
      return false;
    }
  }
  return true;
}

std::vector<int> Polyhedron::ActiveInequalities(std::span<const double> x,
                                                double tol) const {
  CheckDim(x.size(), dim_, "point");
  std::vector<int> active;
  for (std::size_t i = 0; i < ineq_lhs_.size(); ++i) {
    if (std::fabs(Dot(ineq_lhs_[i], x) - ineq_rhs_[i]) <=
        tol * RowScale(ineq_rhs_[i])) {
      active.push_back(static_cast<int>(i));
    }
  }
  return active;
}

Polyhedron Polyhedron::Intersect(const Polyhedron& other) const {
  CheckDim(other.dim_, dim_, "intersected polyhedron");
  Mat a = ineq_lhs_;
  Vec b = ineq_rhs_;
  a.insert(a.end(), other.ineq_lhs_.begin(), other.ineq_lhs_.end());
  b.insert(b.end(), other.ineq_rhs_.begin(), other.ineq_rhs_.end());
  Mat e = eq_lhs_;
  Vec d = eq_rhs_;
  e.insert(e.end(), other.eq_lhs_.begin(), other.eq_lhs_.end());
  d.insert(d.end(), other.eq_rhs_.begin(), other.eq_rhs_.end());
  return Polyhedron(dim_, std::move(a), std::move(b), std::move(e),
                    std::move(d));
}

}  // namespace henig
