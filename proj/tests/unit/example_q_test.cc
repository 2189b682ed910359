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
#include "henig/example_q.h"

#include <gtest/gtest.h>

#include <string>

namespace henig {
namespace {

const ExampleQStage* Stage(const ExampleQReport& r, const std::string& name) {
  for (const ExampleQStage& s : r.stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

TEST(ExampleQTest, AllStagesPass) {
  const ExampleQReport r = RunExampleQ();
  EXPECT_TRUE(r.pass) << r.FirstFailure();
  ASSERT_EQ(r.stages.size(), 5u);
  for (const char* name :
       {"nu", "feasible_set", "slater_fails", "efficiency", "certificate"}) {
    const ExampleQStage* s = Stage(r, name);
    ASSERT_NE(s, nullptr) << name;
    EXPECT_TRUE(s->pass) << name;
  }
  EXPECT_NEAR(r.verification.Trace("scalar_residual")->values.back(), 6e-3, 1e-9);
  EXPECT_NEAR(r.verification.Trace("dual_residual")->values.back(), 1e-3, 1e-9);
}

TEST(ExampleQTest, TightToleranceFailsCertificateStage) {
  ExampleQOptions o;
  o.conv_tol = 1e-5;
  const ExampleQReport r = RunExampleQ(o);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.FirstFailure(), "certificate");
  EXPECT_TRUE(Stage(r, "efficiency")->pass);
}

TEST(ExampleQTest, LongerHorizonPassesDefaultTolerance) {
  ExampleQOptions o;
  o.horizon = 10000;
  o.conv_tol = 1e-3;
  const ExampleQReport r = RunExampleQ(o);
  EXPECT_TRUE(r.pass) << r.FirstFailure();
  EXPECT_NEAR(r.verification.Trace("scalar_residual")->values.back(), 6e-4, 1e-12);
}

TEST(ExampleQTest, ReportJson) {
  const Json j = RunExampleQ().ToJson();
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["stages"].size(), 5u);
}

}  // namespace
}  // namespace henig
