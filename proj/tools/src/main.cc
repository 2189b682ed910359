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
// henig: efficiency checks and sequential optimality certificates for
// multiobjective fractional programs.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"

int main(int argc, char** argv) {
  using namespace henig::cli;

  CLI::App app{"Henig proper efficiency checks and optimality certificates"};
  app.require_subcommand(1);

  CommonFlags flags;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) flags.command_line += ' ';
    flags.command_line += argv[i];
  }
  CertifyFlags certify;
  VerifyFlags verify;
  ExampleQFlags example;
  double tol_conv = 0.0;
  double tol_feas = 0.0;

  auto add_common = [&](CLI::App* sub, bool point_based) {
    if (point_based) {
      sub->add_option("--problem", flags.problem, "problem JSON file")
          ->required();
      sub->add_option("--point", flags.point, "candidate point, e.g. 0,0.5")
          ->required();
    }
    sub->add_option("--out", flags.out, "output file");
    sub->add_option("--tol-conv", tol_conv,
                    "residual convergence tolerance (default 1e-2)");
    sub->add_option("--tol-feas", tol_feas,
                    "feasibility and membership tolerance");
  };

  CLI::App* check = app.add_subcommand("check", "brute-force efficiency check");
  add_common(check, true);
  check->add_option("--grid", flags.grid, "grid, e.g. 201x201:[0,10]x[0,1]")
      ->required();
  check->add_option("--eps-ladder", flags.eps_ladder,
                    "comma-separated eps values, largest first");

  CLI::App* cert = app.add_subcommand("certify", "generate a certificate");
  add_common(cert, true);
  cert->add_option("--theorem", certify.theorem, "4.2, 4.3 or 4.4")
      ->check(CLI::IsMember({"4.2", "4.3", "4.4"}));
  cert->add_option("--lambda", flags.lambda, "weights, e.g. 1,1");
  cert->add_option("--gamma", certify.gamma, "c, c/n or c/n^2");
  cert->add_option("--n", certify.n, "horizon N");
  cert->add_option("--grid", flags.grid, "grid for the pre-check");
  cert->add_option("--eps-ladder", flags.eps_ladder, "eps ladder");
  cert->add_flag("--pin-vstar", certify.pin_vstar, "fix v*_n = 0");
  cert->add_flag("--force", certify.force, "skip the efficiency pre-check");

  CLI::App* ver = app.add_subcommand("verify", "verify a certificate");
  add_common(ver, true);
  ver->add_option("--certificate", verify.certificate, "certificate JSON")
      ->required();

  CLI::App* kkt = app.add_subcommand("kkt", "classical multiplier check");
  add_common(kkt, true);
  kkt->add_option("--lambda", flags.lambda, "weights, e.g. 1,1");
  kkt->add_option("--grid", flags.grid, "grid for the Slater search")
      ->required();

  CLI::App* exq = app.add_subcommand("example-q", "run the embedded example");
  add_common(exq, false);
  exq->add_option("--n", example.n, "certificate horizon");

  CLI::App* self = app.add_subcommand("selftest", "internal consistency run");
  add_common(self, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    if (sub->count("--tol-conv") > 0) flags.tol_conv = tol_conv;
    if (sub->count("--tol-feas") > 0) flags.tol_feas = tol_feas;
  }

  if (check->parsed()) return RunCheck(flags, std::cout);
  if (cert->parsed()) return RunCertify(flags, certify, std::cout);
  if (ver->parsed()) return RunVerify(flags, verify, std::cout);
  if (kkt->parsed()) return RunKkt(flags, std::cout);
  if (exq->parsed()) return RunExampleQ(flags, example, std::cout);
  return RunSelftest(flags, std::cout);
}
