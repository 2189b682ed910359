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
#include "henig/linprog.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "henig/error.h"

namespace henig {
namespace {

constexpr double kPivotTolerance = 1e-11;
constexpr double kReducedCostTolerance = 1e-10;

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

// x_j = offset + sign * z[pos] - z[neg]   (neg only for free variables).
struct VariableMap {
  double offset = 0.0;
  double sign = 1.0;
  int pos = -1;
  int neg = -1;
};

struct StandardForm {
  int num_z = 0;
  std::vector<VariableMap> maps;
  std::vector<Vec> rows;
  std::vector<RowSense> senses;
  Vec rhs;
  Vec cost;  // over z
};

void Validate(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (lp.ineq_lhs.size() != lp.ineq_rhs.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "inequality matrix/rhs row counts differ");
  }
  if (lp.eq_lhs.size() != lp.eq_rhs.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "equality matrix/rhs row counts differ");
  }
  for (const Vec& row : lp.ineq_lhs) CheckDim(row.size(), n, "inequality row");
  for (const Vec& row : lp.eq_lhs) CheckDim(row.size(), n, "equality row");
  for (double v : lp.ineq_rhs) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidInput, "inequality rhs must be finite");
    }
  }
  for (double v : lp.eq_rhs) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidInput, "equality rhs must be finite");
    }
  }
  for (double v : lp.objective) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidInput, "objective must be finite");
    }
  }
  if (!lp.lower.empty()) CheckDim(lp.lower.size(), n, "lower bounds");
  if (!lp.upper.empty()) CheckDim(lp.upper.size(), n, "upper bounds");
  for (std::size_t j = 0; j < n; ++j) {
    const ExtReal lo = lp.lower.empty() ? ExtReal::MinusInfinity() : lp.lower[j];
    const ExtReal hi = lp.upper.empty() ? ExtReal::PlusInfinity() : lp.upper[j];
    if (lo.is_plus_infinity() || hi.is_minus_infinity() || hi < lo) {
      throw Error(ErrorCode::kInvalidInput,
                  "inconsistent bounds on variable " + std::to_string(j));
    }
  }
}

void AppendRow(const Vec& row, double rhs, RowSense sense, StandardForm& sf) {
  Vec z_row(sf.num_z, 0.0);
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double c = row[j];
    if (c == 0.0) continue;
    const VariableMap& m = sf.maps[j];
    z_row[m.pos] += c * m.sign;
    if (m.neg >= 0) z_row[m.neg] -= c;
    rhs -= c * m.offset;
  }
  sf.rows.push_back(std::move(z_row));
  sf.senses.push_back(sense);
  sf.rhs.push_back(rhs);
}

StandardForm ToStandardForm(const LinearProgram& lp) {
  StandardForm sf;
  const std::size_t n = lp.objective.size();
  sf.maps.resize(n);
  std::vector<std::pair<int, double>> upper_rows;  // (z index, bound)
  for (std::size_t j = 0; j < n; ++j) {
    const ExtReal lo = lp.lower.empty() ? ExtReal::MinusInfinity() : lp.lower[j];
    const ExtReal hi = lp.upper.empty() ? ExtReal::PlusInfinity() : lp.upper[j];
    VariableMap& m = sf.maps[j];
    if (lo.is_finite()) {
      m.offset = lo.value();
      m.pos = sf.num_z++;
      if (hi.is_finite()) upper_rows.emplace_back(m.pos, hi.value() - lo.value());
    } else if (hi.is_finite()) {
      m.offset = hi.value();
      m.sign = -1.0;
      m.pos = sf.num_z++;
    } else {
      m.pos = sf.num_z++;
      m.neg = sf.num_z++;
    }
  }
  for (std::size_t i = 0; i < lp.ineq_lhs.size(); ++i) {
    AppendRow(lp.ineq_lhs[i], lp.ineq_rhs[i], RowSense::kLessEqual, sf);
  }
  for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i) {
    AppendRow(lp.eq_lhs[i], lp.eq_rhs[i], RowSense::kEqual, sf);
  }
  for (const auto& [z, bound] : upper_rows) {
    Vec row(sf.num_z, 0.0);
    row[z] = 1.0;
    sf.rows.push_back(std::move(row));
    sf.senses.push_back(RowSense::kLessEqual);
    sf.rhs.push_back(bound);
  }
  sf.cost.assign(sf.num_z, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double c = lp.objective[j];
    const VariableMap& m = sf.maps[j];
    sf.cost[m.pos] += c * m.sign;
    if (m.neg >= 0) sf.cost[m.neg] -= c;
  }
  return sf;
}

// Dense tableau. Row 'objective_row' holds reduced costs; its last entry is
// minus the current objective value.
class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0),
        basis_(rows, -1) {}

  double& at(int r, int c) { return data_[r * (cols_ + 1) + c]; }
  double at(int r, int c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double rhs(int r) const { return at(r, cols_); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int objective_row() const { return rows_; }
  std::vector<int>& basis() { return basis_; }
  const std::vector<int>& basis() const { return basis_; }

  void Pivot(int r, int c) {
    const double p = at(r, c);
    for (int j = 0; j <= cols_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double factor = at(i, c);
      if (factor == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) at(i, j) -= factor * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  // Loads reduced costs for maximizing 'cost' under the current basis.
  void LoadObjective(const Vec& cost) {
    const int o = objective_row();
    for (int j = 0; j < cols_; ++j) at(o, j) = cost[j];
    at(o, cols_) = 0.0;
    for (int i = 0; i < rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) at(o, j) -= cb * at(i, j);
    }
  }

  double ObjectiveValue() const { return -at(objective_row(), cols_); }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
  std::vector<int> basis_;
};

enum class SimplexResult { kOptimal, kUnbounded };

SimplexResult RunSimplex(Tableau& t, const std::vector<bool>& may_enter,
                         long& pivot_budget) {
  const int o = t.objective_row();
  while (true) {
    int entering = -1;
    for (int j = 0; j < t.cols(); ++j) {
      if (may_enter[j] && t.at(o, j) > kReducedCostTolerance) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return SimplexResult::kOptimal;

    // Minimum-ratio test; near-ties go to the smallest basic index.
    int leaving = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, entering);
      if (a <= kPivotTolerance) continue;
      const double ratio = std::max(t.rhs(i), 0.0) / a;
      const double tie = 1e-12 * (1.0 + best_ratio);
      if (leaving < 0 || ratio < best_ratio - tie) {
        leaving = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + tie &&
                 t.basis()[i] < t.basis()[leaving]) {
        leaving = i;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leaving < 0) return SimplexResult::kUnbounded;
    if (--pivot_budget < 0) {
      throw Error(ErrorCode::kNumericalFailure, "simplex pivot budget exhausted");
    }
    t.Pivot(leaving, entering);
  }
}

}  // namespace

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
  }
  return "?";
}

LpOutcome SolveLp(const LinearProgram& lp) {
  Validate(lp);
  StandardForm sf = ToStandardForm(lp);
  const int m = static_cast<int>(sf.rows.size());

  // Normalize to non-negative right-hand sides.
  for (int i = 0; i < m; ++i) {
    if (sf.rhs[i] < 0.0) {
      for (double& v : sf.rows[i]) v = -v;
      sf.rhs[i] = -sf.rhs[i];
      if (sf.senses[i] == RowSense::kLessEqual) {
        sf.senses[i] = RowSense::kGreaterEqual;
      } else if (sf.senses[i] == RowSense::kGreaterEqual) {
        sf.senses[i] = RowSense::kLessEqual;
      }
    }
  }

  int num_slack = 0;
  int num_artificial = 0;
  for (RowSense s : sf.senses) {
    if (s != RowSense::kEqual) ++num_slack;
    if (s != RowSense::kLessEqual) ++num_artificial;
  }
  const int slack_begin = sf.num_z;
  const int artificial_begin = slack_begin + num_slack;
  const int cols = artificial_begin + num_artificial;

  Tableau t(m, cols);
  int next_slack = slack_begin;
  int next_artificial = artificial_begin;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < sf.num_z; ++j) t.at(i, j) = sf.rows[i][j];
    t.rhs(i) = sf.rhs[i];
    switch (sf.senses[i]) {
      case RowSense::kLessEqual:
        t.at(i, next_slack) = 1.0;
        t.basis()[i] = next_slack++;
        break;
      case RowSense::kGreaterEqual:
        t.at(i, next_slack++) = -1.0;
        t.at(i, next_artificial) = 1.0;
        t.basis()[i] = next_artificial++;
        break;
      case RowSense::kEqual:
        t.at(i, next_artificial) = 1.0;
        t.basis()[i] = next_artificial++;
        break;
    }
  }

  long pivot_budget = 50L * (m + cols) + 1000;
  double rhs_scale = 1.0;
  for (double v : sf.rhs) rhs_scale = std::max(rhs_scale, std::abs(v));

  if (num_artificial > 0) {
    Vec phase1(cols, 0.0);
    for (int j = artificial_begin; j < cols; ++j) phase1[j] = -1.0;
    t.LoadObjective(phase1);
    std::vector<bool> all(cols, true);
    RunSimplex(t, all, pivot_budget);
    if (t.ObjectiveValue() < -kLpFeasibilityTolerance * rhs_scale) {
      return LpOutcome{LpStatus::kInfeasible, {}, 0.0};
    }
    // Drive remaining artificials out of the basis where possible; rows
    // with no usable pivot are redundant and stay inert.
    for (int i = 0; i < m; ++i) {
      if (t.basis()[i] < artificial_begin) continue;
      int best = -1;
      for (int j = 0; j < artificial_begin; ++j) {
        if (std::abs(t.at(i, j)) > 1e-9 &&
            (best < 0 || std::abs(t.at(i, j)) > std::abs(t.at(i, best)))) {
          best = j;
        }
      }
      if (best >= 0) t.Pivot(i, best);
    }
  }

  Vec phase2(cols, 0.0);
  for (int j = 0; j < sf.num_z; ++j) phase2[j] = sf.cost[j];
  t.LoadObjective(phase2);
  std::vector<bool> may_enter(cols, true);
  for (int j = artificial_begin; j < cols; ++j) may_enter[j] = false;
  if (RunSimplex(t, may_enter, pivot_budget) == SimplexResult::kUnbounded) {
    return LpOutcome{LpStatus::kUnbounded, {}, 0.0};
  }

  Vec z(sf.num_z, 0.0);
  for (int i = 0; i < m; ++i) {
    const int b = t.basis()[i];
    if (b < sf.num_z) z[b] = std::max(t.rhs(i), 0.0);
  }
  const std::size_t n = lp.objective.size();
  Vec x(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const VariableMap& vm = sf.maps[j];
    x[j] = vm.offset + vm.sign * z[vm.pos] - (vm.neg >= 0 ? z[vm.neg] : 0.0);
  }

  // Re-check primal feasibility in the original coordinates.
  auto check_row = [&](const Vec& row, double rhs, bool equality) {
    double lhs = 0.0;
    double scale = 1.0 + std::abs(rhs);
    for (std::size_t j = 0; j < n; ++j) {
      lhs += row[j] * x[j];
      scale += std::abs(row[j] * x[j]);
    }
    const double violation = equality ? std::abs(lhs - rhs) : lhs - rhs;
    if (violation > 100.0 * kLpFeasibilityTolerance * scale) {
      throw Error(ErrorCode::kNumericalFailure,
                  "optimal point violates a constraint by " +
                      std::to_string(violation));
    }
  };
  for (std::size_t i = 0; i < lp.ineq_lhs.size(); ++i) {
    check_row(lp.ineq_lhs[i], lp.ineq_rhs[i], false);
  }
  for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i) {
    check_row(lp.eq_lhs[i], lp.eq_rhs[i], true);
  }

  return LpOutcome{LpStatus::kOptimal, x, Dot(lp.objective, x)};
}

int LpBuilder::AddVariable(ExtReal lower, ExtReal upper) {
  lower_.push_back(lower);
  upper_.push_back(upper);
  objective_.push_back(0.0);
  return static_cast<int>(lower_.size()) - 1;
}

int LpBuilder::AddVariables(int count, ExtReal lower, ExtReal upper) {
  const int first = num_variables();
  for (int k = 0; k < count; ++k) AddVariable(lower, upper);
  return first;
}

void LpBuilder::AddLessEqual(const LpRow& row, double rhs) {
  le_rows_.push_back(row);
  le_rhs_.push_back(rhs);
}

void LpBuilder::AddGreaterEqual(const LpRow& row, double rhs) {
  LpRow negated = row;
  for (LpTerm& term : negated) term.coef = -term.coef;
  AddLessEqual(negated, -rhs);
}

void LpBuilder::AddEqual(const LpRow& row, double rhs) {
  eq_rows_.push_back(row);
  eq_rhs_.push_back(rhs);
}

void LpBuilder::AddObjective(int var, double coef) { objective_.at(var) += coef; }

Vec LpBuilder::Densify(const LpRow& row) const {
  Vec dense(num_variables(), 0.0);
  for (const LpTerm& term : row) {
    if (term.var < 0 || term.var >= num_variables()) {
      throw Error(ErrorCode::kInternal, "LP term references unknown variable");
    }
    dense[term.var] += term.coef;
  }
  return dense;
}

LinearProgram LpBuilder::Build() const {
  LinearProgram lp;
  lp.objective = objective_;
  lp.lower = lower_;
  lp.upper = upper_;
  for (std::size_t i = 0; i < le_rows_.size(); ++i) {
    lp.ineq_lhs.push_back(Densify(le_rows_[i]));
    lp.ineq_rhs.push_back(le_rhs_[i]);
  }
  for (std::size_t i = 0; i < eq_rows_.size(); ++i) {
    lp.eq_lhs.push_back(Densify(eq_rows_[i]));
    lp.eq_rhs.push_back(eq_rhs_[i]);
  }
  return lp;
}

}  // namespace henig
