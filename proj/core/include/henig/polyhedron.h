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
#ifndef HENIG_POLYHEDRON_H_
#define HENIG_POLYHEDRON_H_

#include <span>
#include <vector>

#include "henig/ext_real.h"
#include "henig/linear_algebra.h"

namespace henig {

// { x in R^n : A x <= b, E x = d }. Always nonempty: the constructor runs
// one LP feasibility check and throws Error(kEmptyPolyhedron) otherwise.
class Polyhedron {
 public:
  Polyhedron(int dim, Mat ineq_lhs, Vec ineq_rhs, Mat eq_lhs = {},
             Vec eq_rhs = {});

  static Polyhedron Whole(int dim);
  // Coordinate box; infinite entries leave that side open.
  static Polyhedron Box(const std::vector<ExtReal>& lower,
                        const std::vector<ExtReal>& upper);

  int dim() const { return dim_; }
  const Mat& ineq_lhs() const { return ineq_lhs_; }
  const Vec& ineq_rhs() const { return ineq_rhs_; }
  const Mat& eq_lhs() const { return eq_lhs_; }
  const Vec& eq_rhs() const { return eq_rhs_; }
  int num_inequalities() const { return static_cast<int>(ineq_lhs_.size()); }
  int num_equalities() const { return static_cast<int>(eq_lhs_.size()); }
  bool is_whole_space() const { return ineq_lhs_.empty() && eq_lhs_.empty(); }

  // Largest constraint violation at x (0 when x is inside).
  double Violation(std::span<const double> x) const;
  // Membership with a violation allowance scaled by the row magnitudes.
  bool Contains(std::span<const double> x, double tol = 1e-9) const;

  // Rows of A x <= b that are tight at x within 'tol'.
  std::vector<int> ActiveInequalities(std::span<const double> x,
                                      double tol) const;

  Polyhedron Intersect(const Polyhedron& other) const;

 private:
  int dim_;
  Mat ineq_lhs_;
  Vec ineq_rhs_;
  Mat eq_lhs_;
  Vec eq_rhs_;
};

}  // namespace henig

#endif  // HENIG_POLYHEDRON_H_
