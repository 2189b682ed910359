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

#include <gtest/gtest.h>

#include "henig/error.h"
#include "test_instances.h"

namespace henig {
namespace {

LinearProgram OneVariable(double upper_rhs) {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.ineq_lhs = {{1.0}};
  lp.ineq_rhs = {upper_rhs};
  lp.lower = {ExtReal(0.0)};
  lp.upper = {ExtReal::PlusInfinity()};
  return lp;
}

TEST(LinprogTest, SingleActiveConstraint) {
  const LpOutcome out = SolveLp(OneVariable(3.0));
  ASSERT_TRUE(out.optimal());
  EXPECT_NEAR(out.solution[0], 3.0, kLpFeasibilityTolerance);
  EXPECT_NEAR(out.value, 3.0, kLpObjectiveTolerance);
}

TEST(LinprogTest, UnboundedRay) {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.lower = {ExtReal(0.0)};
  lp.upper = {ExtReal::PlusInfinity()};
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kUnbounded);
}

TEST(LinprogTest, EmptyFeasibleSet) {
  LinearProgram lp = OneVariable(-1.0);
  lp.objective = {0.0};
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);
}

TEST(LinprogTest, EqualityRowsAndFreeVariables) {
  // max x + y  s.t.  x - y = 1, x <= 4, y free.
  LpBuilder b;
  const int x = b.AddVariable();
  const int y = b.AddVariable();
  b.AddEqual({{x, 1.0}, {y, -1.0}}, 1.0);
  b.AddLessEqual({{x, 1.0}}, 4.0);
  b.AddObjective(x, 1.0);
  b.AddObjective(y, 1.0);
  const LpOutcome out = SolveLp(b.Build());
  ASSERT_TRUE(out.optimal());
  EXPECT_NEAR(out.value, 7.0, kLpObjectiveTolerance);
}

// Beale's cycling example; Bland's rule must terminate at the optimum 1/20.
TEST(LinprogTest, TerminatesOnCyclingExample) {
  LinearProgram lp;
  lp.objective = {0.75, -150.0, 0.02, -6.0};
  lp.ineq_lhs = {{0.25, -60.0, -0.04, 9.0}, {0.5, -90.0, -0.02, 3.0},
                 {0.0, 0.0, 1.0, 0.0}};
  lp.ineq_rhs = {0.0, 0.0, 1.0};
  lp.lower.assign(4, ExtReal(0.0));
  lp.upper.assign(4, ExtReal::PlusInfinity());
  const LpOutcome out = SolveLp(lp);
  ASSERT_TRUE(out.optimal());
  EXPECT_NEAR(out.value, 0.05, kLpObjectiveTolerance);
}

TEST(LinprogTest, RejectsDimensionMismatch) {
  LinearProgram lp = OneVariable(1.0);
  lp.ineq_lhs = {{1.0, 2.0}};
  EXPECT_THROW(SolveLp(lp), Error);
}

TEST(LinprogTest, RejectsNonFiniteRhs) {
  LinearProgram lp = OneVariable(std::numeric_limits<double>::infinity());
  EXPECT_THROW(SolveLp(lp), Error);
}

// Weak duality against sampled feasible points, and determinism.
TEST(LinprogTest, OptimumDominatesSampledFeasiblePoints) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    LinearProgram lp;
    lp.objective = testing::QuarterVec(rng, d, -2.0, 2.0);
    for (int r = 0; r < 2 * d; ++r) {
      lp.ineq_lhs.push_back(testing::QuarterVec(rng, d, -2.0, 2.0));
      lp.ineq_rhs.push_back(testing::Quarter(rng, 0.25, 3.0));
    }
    lp.lower.assign(d, ExtReal(-5.0));
    lp.upper.assign(d, ExtReal(5.0));
    const LpOutcome out = SolveLp(lp);
    ASSERT_TRUE(out.optimal());  // 0 is feasible and the box is bounded.
    const LpOutcome again = SolveLp(lp);
    EXPECT_EQ(out.solution, again.solution);
    for (int s = 0; s < 200; ++s) {
      Vec x(d);
      for (double& v : x) v = testing::Uniform(rng, -5.0, 5.0);
      bool feasible = true;
      for (int r = 0; r < 2 * d; ++r) {
        feasible = feasible && Dot(lp.ineq_lhs[r], x) <= lp.ineq_rhs[r];
      }
      if (feasible) {
        EXPECT_GE(out.value + kLpObjectiveTolerance, Dot(lp.objective, x));
      }
    }
    for (int r = 0; r < 2 * d; ++r) {
      EXPECT_LE(Dot(lp.ineq_lhs[r], out.solution),
                lp.ineq_rhs[r] + kLpFeasibilityTolerance);
    }
  }
}

}  // namespace
}  // namespace henig
