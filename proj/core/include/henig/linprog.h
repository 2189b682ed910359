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
#ifndef HENIG_LINPROG_H_
#define HENIG_LINPROG_H_

#include <vector>

#include "henig/ext_real.h"
#include "henig/linear_algebra.h"

namespace henig {

// Primal feasibility slack accepted on reported optima.
inline constexpr double kLpFeasibilityTolerance = 1e-9;
// Accuracy of reported optimal values on rational-input instances.
inline constexpr double kLpObjectiveTolerance = 1e-8;

// maximize   objective . x
// subject to ineq_lhs x <= ineq_rhs
//            eq_lhs x    = eq_rhs
//            lower <= x <= upper
//
// Empty 'lower'/'upper' mean every variable is free.
struct LinearProgram {
  Vec objective;
  Mat ineq_lhs;
  Vec ineq_rhs;
  Mat eq_lhs;
  Vec eq_rhs;
  std::vector<ExtReal> lower;
  std::vector<ExtReal> upper;

  int num_variables() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* LpStatusName(LpStatus status);

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  Vec solution;        // Set when status == kOptimal.
  double value = 0.0;  // Set when status == kOptimal.

  bool optimal() const { return status == LpStatus::kOptimal; }
};

// Dense two-phase primal simplex with Bland's rule. Pure function of its
// input. Throws Error(kInvalidInput / kDimensionMismatch) for malformed
// programs and Error(kNumericalFailure) when the pivot budget is exhausted
// or the final point fails the feasibility re-check.
LpOutcome SolveLp(const LinearProgram& lp);

// Incremental construction of a LinearProgram from sparse rows.
struct LpTerm {
  int var;
  double coef;
};
using LpRow = std::vector<LpTerm>;

class LpBuilder {
 public:
  // Returns the index of the new variable.
  int AddVariable(ExtReal lower = ExtReal::MinusInfinity(),
                  ExtReal upper = ExtReal::PlusInfinity());
  // Returns the index of the first of 'count' consecutive variables.
  int AddVariables(int count, ExtReal lower = ExtReal::MinusInfinity(),
                   ExtReal upper = ExtReal::PlusInfinity());

  void AddLessEqual(const LpRow& row, double rhs);
  void AddGreaterEqual(const LpRow& row, double rhs);
  void AddEqual(const LpRow& row, double rhs);

  // Adds 'coef' to the objective coefficient of 'var' (maximization).
  void AddObjective(int var, double coef);

  int num_variables() const { return static_cast<int>(lower_.size()); }

  LinearProgram Build() const;

 private:
  Vec Densify(const LpRow& row) const;

  std::vector<ExtReal> lower_;
  std::vector<ExtReal> upper_;
  Vec objective_;
  std::vector<LpRow> le_rows_;
  Vec le_rhs_;
  std::vector<LpRow> eq_rows_;
  Vec eq_rhs_;
};

}  // namespace henig

#endif  // HENIG_LINPROG_H_
