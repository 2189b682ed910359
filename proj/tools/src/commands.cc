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
#include "commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "henig/certificate_generation.h"
#include "henig/error.h"
#include "henig/example_q.h"
#include "henig/fractional.h"
#include "henig/io.h"

namespace henig::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return kExitUsage;
    case ErrorCode::kInternal:
    case ErrorCode::kNumericalFailure:
      return kExitInternal;
    default:
      return kExitData;
  }
}

Json Header(const char* command, const CommonFlags& flags) {
  return {{"command", command}, {"invocation", flags.command_line}};
}

void Emit(Json report, const CommonFlags& flags, std::ostream& out,
          bool write_out_flag) {
  if (write_out_flag && !flags.out.empty()) WriteJsonFile(flags.out, report);
  out << DumpJson(report);
}

// Runs 'body' and turns every failure into a JSON error report plus an exit
// code.
int Guard(const char* command, const CommonFlags& flags, std::ostream& out,
          const std::function<int(Json&)>& body) {
  Json report = Header(command, flags);
  const auto start = std::chrono::steady_clock::now();
  int code = kExitInternal;
  try {
    code = body(report);
  } catch (const UsageError& e) {
    report["error"] = {{"code", "Usage"}, {"message", e.what()}};
    code = kExitUsage;
  } catch (const Error& e) {
    report["error"] = {{"code", std::string(ErrorCodeName(e.code()))},
                       {"message", e.what()}};
    code = ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    report["error"] = {{"code", "Internal"}, {"message", e.what()}};
    code = kExitInternal;
  }
  report["exit_code"] = code;
  report["seconds"] = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  Emit(std::move(report), flags, out, std::string(command) != "certify");
  return code;
}

std::string Require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing ") + flag);
  return value;
}

Vec ParseVectorFlag(const std::string& text, const char* flag) {
  try {
    return ParseVectorText(text);
  } catch (const Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

GridSpec ParseGridFlag(const std::string& text) {
  try {
    return GridSpec::Parse(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
}

std::vector<double> Ladder(const CommonFlags& flags) {
  if (flags.eps_ladder.empty()) return DefaultEpsLadder();
  return ParseVectorFlag(flags.eps_ladder, "--eps-ladder");
}

struct Loaded {
  ProblemFile file;
  Vec point;
};

// Loads the problem and the point; an infeasible point is a usage error.
Loaded LoadProblemAndPoint(const CommonFlags& flags, Json& report) {
  Loaded l{LoadProblem(Require(flags.problem, "--problem")), {}};
  l.point = ParseVectorFlag(Require(flags.point, "--point"), "--point");
  if (static_cast<int>(l.point.size()) != l.file.problem.n()) {
    throw UsageError("--point has " + std::to_string(l.point.size()) +
                     " coordinates, the problem has " +
                     std::to_string(l.file.problem.n()));
  }
  report["problem"] = {{"name", l.file.name}, {"path", flags.problem}};
  Json point = Json::array();
  for (double v : l.point) point.push_back(NumberToJson(v));
  report["point"] = point;
  const double tol = flags.tol_feas.value_or(kLpFeasibilityTolerance);
  if (!Feasible(l.file.problem, l.point, tol)) {
    throw UsageError("point is infeasible for the problem");
  }
  return l;
}

VerifyOptions MakeVerifyOptions(const CommonFlags& flags, double conv_default) {
  VerifyOptions o;
  o.conv_tol = flags.tol_conv.value_or(conv_default);
  if (flags.tol_feas) o.membership_tol = *flags.tol_feas;
  return o;
}

int VerdictExit(EfficiencyVerdict::Kind kind) {
  switch (kind) {
    case EfficiencyVerdict::Kind::kProperlyEfficient:
      return kExitOk;
    case EfficiencyVerdict::Kind::kDominated:
      return kExitNegative;
    case EfficiencyVerdict::Kind::kInconclusive:
      return kExitUndecided;
  }
  return kExitInternal;
}

// CLI default for --tol-conv.
constexpr double kCliConvTolerance = 1e-2;

Vec LambdaOrOnes(const CommonFlags& flags, int m) {
  if (flags.lambda.empty()) return Vec(m, 1.0);
  return ParseVectorFlag(flags.lambda, "--lambda");
}

}  // namespace

int RunCheck(const CommonFlags& flags, std::ostream& out) {
  return Guard("check", flags, out, [&](Json& report) {
    const Loaded l = LoadProblemAndPoint(flags, report);
    const GridSpec grid = ParseGridFlag(Require(flags.grid, "--grid"));
    const EquivalenceResult eq =
        ParametricEquivalenceCheck(l.file.problem, l.point, Ladder(flags), grid);
    report["result"] = VerdictToJson(eq.original);
    report["parametric"] = EquivalenceToJson(eq);
    Json warnings = Json::array();
    for (const std::string& w : StandingAssumptionWarnings(l.file.problem, grid)) {
      warnings.push_back(w);
    }
    report["warnings"] = warnings;
    return VerdictExit(eq.original.kind);
  });
}

int RunCertify(const CommonFlags& flags, const CertifyFlags& certify,
               std::ostream& out) {
  return Guard("certify", flags, out, [&](Json& report) {
    const Loaded l = LoadProblemAndPoint(flags, report);
    const FractionalProblem& prob = l.file.problem;
    CertificateKind kind;
    try {
      kind = ParseCertificateTag(certify.theorem);
    } catch (const Error& e) {
      throw UsageError(std::string("--theorem: ") + e.what());
    }
    if (certify.n < 1) throw UsageError("--n must be >= 1");
    SequenceTerm gamma;
    try {
      gamma = ParseSequenceTerm(certify.gamma);
    } catch (const Error& e) {
      throw UsageError(std::string("--gamma: ") + e.what());
    }

    if (!certify.force) {
      if (flags.grid.empty()) {
        throw UsageError("certify needs --grid for the efficiency pre-check, "
                         "or --force");
      }
      const EfficiencyVerdict v = HenigCheckBruteforce(
          prob, l.point, Ladder(flags), ParseGridFlag(flags.grid));
      report["check"] = VerdictToJson(v);
      if (v.kind != EfficiencyVerdict::Kind::kProperlyEfficient) {
        report["reason"] = "pre-check did not find the point properly "
                           "efficient; rerun with --force to certify anyway";
        return VerdictExit(v.kind);
      }
    }

    Vec gammas;
    for (int n = 1; n <= certify.n; ++n) gammas.push_back(gamma(n));
    GenerateOptions gen;
    gen.pin_vstar = certify.pin_vstar;
    const VerifyOptions vo = MakeVerifyOptions(flags, kCliConvTolerance);

    GeneratedCertificate generated;
    Vec lambda;
    if (!flags.lambda.empty()) {
      lambda = LambdaOrOnes(flags, prob.m());
      generated = GenerateEpsCertificate(prob, l.point, lambda, gammas, gen);
    } else {
      LambdaSearchResult search = GenerateWithLambdaSearch(
          prob, l.point, gammas, gen, /*resolution=*/10, vo.conv_tol);
      lambda = search.lambda;
      generated = std::move(search.generated);
      report["lambda_candidates_tried"] = search.candidates_tried;
    }
    Json residuals = Json::array();
    for (double r : generated.residuals) residuals.push_back(NumberToJson(r));
    double floor = std::numeric_limits<double>::infinity();
    for (std::size_t k = kMinimumHorizon - 1; k < generated.residuals.size(); ++k) {
      floor = std::min(floor, generated.residuals[k]);
    }
    report["generation"] = {
        {"gamma", certify.gamma},
        {"N", certify.n},
        {"pin_vstar", certify.pin_vstar},
        {"residuals", residuals},
        {"residual_floor_after_burn_in", NumberToJson(floor)},
        {"burn_in", kMinimumHorizon}};

    AnyCertificate cert = generated.cert;
    if (kind == CertificateKind::kEpigraph) {
      cert = EpiFromEps(prob, l.point, generated.cert);
    } else if (kind == CertificateKind::kExact) {
      ExactTransfer t = EpsToExact(prob, l.point, generated.cert);
      report["transfer"] = TransferRecordsToJson(t.records);
      cert = std::move(t.cert);
    }
    const Json cert_json = CertificateToJson(cert);
    if (!flags.out.empty()) {
      WriteJsonFile(flags.out, cert_json);
      report["certificate_path"] = flags.out;
    } else {
      report["certificate"] = cert_json;
    }

    if (static_cast<int>(gammas.size()) < kMinimumHorizon) {
      report["verification"] = {{"verdict", "HorizonTooShort"}};
      return kExitNegative;
    }
    const VerificationReport vr = VerifyAny(prob, l.point, cert, vo);
    report["verification"] = VerificationReportToJson(vr);
    return vr.accept ? kExitOk : kExitNegative;
  });
}

int RunVerify(const CommonFlags& flags, const VerifyFlags& verify,
              std::ostream& out) {
  return Guard("verify", flags, out, [&](Json& report) {
    const Loaded l = LoadProblemAndPoint(flags, report);
    const AnyCertificate cert =
        LoadCertificate(Require(verify.certificate, "--certificate"));
    const VerifyOptions vo = MakeVerifyOptions(flags, kCliConvTolerance);
    report["certificate"] = {{"path", verify.certificate},
                             {"theorem", CertificateTag(KindOf(cert))},
                             {"N", Horizon(cert)}};
    try {
      const VerificationReport vr = VerifyAny(l.file.problem, l.point, cert, vo);
      report["result"] = VerificationReportToJson(vr);
      return vr.accept ? kExitOk : kExitNegative;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kHorizonTooShort) throw;
      report["result"] = {{"verdict", "HorizonTooShort"},
                          {"accept", false},
                          {"reason", e.what()}};
      return kExitNegative;
    }
  });
}

int RunKkt(const CommonFlags& flags, std::ostream& out) {
  return Guard("kkt", flags, out, [&](Json& report) {
    const Loaded l = LoadProblemAndPoint(flags, report);
    const GridSpec grid = ParseGridFlag(Require(flags.grid, "--grid"));
    const SlaterResult slater = SlaterCheck(l.file.problem, grid);
    report["slater"] = SlaterToJson(slater);
    report["grid"] = grid.ToString();
    if (!slater.holds) {
      report["result"] = "CQ fails - use sequential certificates";
      return kExitUndecided;
    }
    const Vec lambda = LambdaOrOnes(flags, l.file.problem.m());
    const KktResult kkt = ClassicalKktCheck(l.file.problem, l.point, lambda);
    report["kkt"] = KktToJson(kkt);
    switch (kkt.status) {
      case KktResult::Status::kHolds:
        report["result"] = "Holds";
        return kExitOk;
      case KktResult::Status::kInfeasible:
        report["result"] = "Fails(infeasible)";
        return kExitNegative;
      case KktResult::Status::kUnsupported:
        report["result"] = "Fails(unsupported)";
        return kExitUndecided;
    }
    return kExitInternal;
  });
}

int RunExampleQ(const CommonFlags& flags, const ExampleQFlags& example,
                std::ostream& out) {
  return Guard("example-q", flags, out, [&](Json& report) {
    if (example.n < 1) throw UsageError("--n must be >= 1");
    ExampleQOptions o;
    o.horizon = example.n;
    o.conv_tol = flags.tol_conv.value_or(kCliConvTolerance);
    report["N"] = o.horizon;
    report["tol_conv"] = o.conv_tol;
    const ExampleQReport r = henig::RunExampleQ(o);
    report.update(r.ToJson());
    report["command"] = "example-q";
    return r.pass ? kExitOk : kExitNegative;
  });
}

int RunSelftest(const CommonFlags& flags, std::ostream& out) {
  return Guard("selftest", flags, out, [&](Json& report) {
    Json checks = Json::array();
    bool all = true;
    auto record = [&](const char* name, bool pass) {
      checks.push_back({{"check", name}, {"pass", pass}});
      all = all && pass;
    };

    const ExampleQReport q = henig::RunExampleQ({});
    record("example_q", q.pass);

    const ProblemFile toy = AbsoluteValueToy();
    const Vec zero{0.0};
    const Vec one{1.0};
    const GridSpec grid = GridSpec::Parse("201:[-1,1]");
    record("toy_efficient",
           HenigCheckBruteforce(toy.problem, zero, DefaultEpsLadder(), grid)
                   .kind == EfficiencyVerdict::Kind::kProperlyEfficient);
    record("toy_dominated",
           HenigCheckBruteforce(toy.problem, one, DefaultEpsLadder(), grid)
                   .kind == EfficiencyVerdict::Kind::kDominated);

    Vec gammas;
    for (int n = 1; n <= 20; ++n) gammas.push_back(1.0 / n);
    const GeneratedCertificate g =
        GenerateEpsCertificate(toy.problem, zero, Vec{1.0, 1.0}, gammas, {});
    record("toy_zero_residuals",
           std::all_of(g.residuals.begin(), g.residuals.end(),
                       [](double r) { return r <= 1e-9; }));
    VerifyOptions vo;
    vo.conv_tol = gammas.back();  // the scalar trace is gamma_n itself
    record("toy_certificate_accepts",
           VerifyEpsCertificate(toy.problem, zero, g.cert, vo).accept);
    record("toy_kkt_holds",
           ClassicalKktCheck(toy.problem, zero, Vec{1.0, 1.0}).status ==
               KktResult::Status::kHolds);

    const AnyCertificate reparsed =
        ParseCertificate(CertificateToJson(AnyCertificate(g.cert)));
    record("certificate_round_trip",
           DumpJson(CertificateToJson(reparsed)) ==
               DumpJson(CertificateToJson(AnyCertificate(g.cert))));

    report["checks"] = checks;
    report["pass"] = all;
    return all ? kExitOk : kExitInternal;
  });
}

}  // namespace henig::cli
