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

#include <chrono>
#include <limits>
#include <utility>

#include "henig/certificate_generation.h"
#include "henig/fractional.h"

namespace henig {

ProblemFile ExampleQProblem() {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Objective> objectives{
      {PolyhedralFn::Affine({2.0, 0.0}, 0.0),
       PolyhedralFn::Affine({0.0, -1.0}, -3.0)},
      {PolyhedralFn::Affine({-2.0, 0.0}, 0.0),
       BlackBoxFn::Make(BuiltinKind::kNegQuadPlusOne, 2)},
  };
  std::vector<ConvexFn> h{BlackBoxFn::Make(BuiltinKind::kReluSq, 2),
                          BlackBoxFn::Make(BuiltinKind::kEuclMinusLast, 2)};
  Polyhedron c = Polyhedron::Box({ExtReal(0.0), ExtReal(0.0)},
                                 {ExtReal(inf), ExtReal(1.0)});
  return ProblemFile{
      "Q",
      "two ratios sharing a numerator; feasible set {0} x [0, 1], no Slater "
      "point",
      FractionalProblem(2, std::move(objectives), std::move(h),
                        PolyhedralCone::NonnegOrthant(2), std::move(c))};
}

ProblemFile AbsoluteValueToy() {
  const PolyhedralFn abs({{{1.0}, 0.0}, {{-1.0}, 0.0}});
  const PolyhedralFn minus_one = PolyhedralFn::Affine({0.0}, -1.0);
  std::vector<Objective> objectives{{abs, minus_one}, {abs, minus_one}};
  std::vector<ConvexFn> h{PolyhedralFn::Affine({1.0}, -1.0)};
  return ProblemFile{
      "absolute-value toy",
      "f1 = f2 = |x| over [-1, 1] with h(x) = x - 1",
      FractionalProblem(1, std::move(objectives), std::move(h),
                        PolyhedralCone::NonnegOrthant(1),
                        Polyhedron::Box({ExtReal(-1.0)}, {ExtReal(1.0)}))};
}

Vec ExampleQPoint() { return {0.0, 0.5}; }

GridSpec ExampleQGrid() { return GridSpec::Parse("201x201:[0,10]x[0,1]"); }

Json ExampleQCertificateJson(int horizon) {
  return {
      {"theorem", "4.2"},
      {"lambda", {1.0, 1.0}},
      {"N", horizon},
      {"closed_form",
       {{"xstar", Json::array({Json::array({"2", "0"}), Json::array({"-2", "0"})})},
        {"a", {"1/n", "1/n"}},
        {"wstar", Json::array({Json::array({"0", "0"}), Json::array({"0", "0"})})},
        {"b", {"1/n", "1/n"}},
        {"cstar", {"0", "1/n"}},
        {"d", "1/n"},
        {"ystar", {"0", "0"}},
        {"s", "1/n"},
        {"vstar", {"0", "0"}},
        {"ustar", {"0", "0"}},
        {"t", "0"}}},
  };
}

Json ExampleQReport::ToJson() const {
  Json stage_list = Json::array();
  for (const ExampleQStage& s : stages) {
    stage_list.push_back({{"stage", s.name}, {"pass", s.pass}, {"detail", s.detail}});
  }
  Json j = {{"command", "example-q"},
            {"pass", pass},
            {"stages", std::move(stage_list)}};
  const std::string failure = FirstFailure();
  if (!failure.empty()) j["failed_stage"] = failure;
  return j;
}

std::string ExampleQReport::FirstFailure() const {
  for (const ExampleQStage& s : stages) {
    if (!s.pass) return s.name;
  }
  return {};
}

ExampleQReport RunExampleQ(const ExampleQOptions& options) {
  const ProblemFile file = ExampleQProblem();
  const FractionalProblem& prob = file.problem;
  const Vec xbar = ExampleQPoint();
  const GridSpec grid = ExampleQGrid();
  ExampleQReport report;

  {
    const Vec nu = NuValues(prob, xbar);
    report.stages.push_back({"nu", nu[0] == 0.0 && nu[1] == 0.0,
                             {{"nu", {NumberToJson(nu[0]), NumberToJson(nu[1])}}}});
  }
  {
    // Exact set equality on the grid: feasible iff x == 0.
    std::size_t feasible = 0;
    std::size_t off_axis = 0;
    std::size_t missing = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Vec p = grid.Point(i);
      const bool ok = Feasible(prob, p);
      feasible += ok ? 1 : 0;
      if (ok && p[0] != 0.0) ++off_axis;
      if (!ok && p[0] == 0.0) ++missing;
    }
    report.stages.push_back({"feasible_set",
                             feasible > 0 && off_axis == 0 && missing == 0,
                             {{"grid", grid.ToString()},
                              {"feasible_points", feasible},
                              {"feasible_with_x_nonzero", off_axis},
                              {"x_zero_points_infeasible", missing}}});
  }
  {
    const SlaterResult slater = SlaterCheck(prob, grid);
    report.stages.push_back({"slater_fails", !slater.holds, SlaterToJson(slater)});
  }
  {
    const auto start = std::chrono::steady_clock::now();
    const EfficiencyVerdict v =
        HenigCheckBruteforce(prob, xbar, DefaultEpsLadder(), grid);
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    Json detail = VerdictToJson(v);
    detail["seconds"] = seconds;
    report.stages.push_back(
        {"efficiency",
         v.kind == EfficiencyVerdict::Kind::kProperlyEfficient,
         std::move(detail)});
  }
  {
    VerifyOptions vo;
    vo.conv_tol = options.conv_tol;
    const AnyCertificate cert =
        ParseCertificate(ExampleQCertificateJson(options.horizon));
    report.verification = VerifyAny(prob, xbar, cert, vo);
    report.stages.push_back({"certificate", report.verification.accept,
                             VerificationReportToJson(report.verification)});
  }
  report.pass = report.FirstFailure().empty();
  return report;
}

}  // namespace henig
