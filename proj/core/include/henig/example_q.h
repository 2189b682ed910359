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
#ifndef HENIG_EXAMPLE_Q_H_
#define HENIG_EXAMPLE_Q_H_

#include <string>
#include <vector>

#include "henig/grid.h"
#include "henig/io.h"

namespace henig {

// The two-objective fractional problem (Q):
//   minimize (2x / (y + 3), 2x / (y^2 + 1))
//   subject to ((max{0, x})^2, sqrt(x^2 + y^2) - y) in -R^2_+,
//              (x, y) in R_+ x [0, 1].
// Stored as f1 = 2x, f2 = -2x, -g1 = -(y + 3), -g2 = y^2 + 1.
ProblemFile ExampleQProblem();
Vec ExampleQPoint();                  // (0, 1/2)
GridSpec ExampleQGrid();              // 201x201 over [0,10]x[0,1]

// Closed-form epigraph certificate with lambda = (1, 1), v*_n = 0 and all
// heights 1/n, for n = 1..horizon.
Json ExampleQCertificateJson(int horizon);

// One-dimensional companion: f1 = f2 = |x|, g1 = g2 = 1, h(x) = x - 1,
// Y+ = R_+, C = [-1, 1]. x = 0 is properly efficient, x = 1 is dominated by 0.
ProblemFile AbsoluteValueToy();

struct ExampleQOptions {
  int horizon = 1000;
  double conv_tol = 1e-2;
};

struct ExampleQStage {
  std::string name;
  bool pass = false;
  Json detail;
};

struct ExampleQReport {
  std::vector<ExampleQStage> stages;
  bool pass = false;
  VerificationReport verification;

  Json ToJson() const;
  // First failing stage name, empty when everything passed.
  std::string FirstFailure() const;
};

ExampleQReport RunExampleQ(const ExampleQOptions& options = {});

}  // namespace henig

#endif  // HENIG_EXAMPLE_Q_H_
