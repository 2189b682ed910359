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
#ifndef HENIG_TOOLS_COMMANDS_H_
#define HENIG_TOOLS_COMMANDS_H_

#include <optional>
#include <ostream>
#include <string>

namespace henig::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;          // ProperlyEfficient / Accept / Holds
inline constexpr int kExitNegative = 2;    // Dominated / Reject / KKT infeasible
inline constexpr int kExitUndecided = 3;   // Inconclusive / CQ fails
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitInternal = 70;

struct CommonFlags {
  std::string problem;
  std::string point;
  std::string out;
  std::string grid;
  std::string eps_ladder;
  std::string lambda;
  std::optional<double> tol_conv;
  std::optional<double> tol_feas;
  std::string command_line;
};

struct CertifyFlags {
  std::string theorem = "4.3";
  std::string gamma = "1/n";
  int n = 100;
  bool pin_vstar = false;
  bool force = false;
};

struct VerifyFlags {
  std::string certificate;
};

struct ExampleQFlags {
  int n = 1000;
};

// Each command writes one JSON report to 'out' (and to flags.out when set,
// except certify, where --out names the certificate file) and returns the
// exit code. Errors are reported as JSON as well.
int RunCheck(const CommonFlags& flags, std::ostream& out);
int RunCertify(const CommonFlags& flags, const CertifyFlags& certify,
               std::ostream& out);
int RunVerify(const CommonFlags& flags, const VerifyFlags& verify,
              std::ostream& out);
int RunKkt(const CommonFlags& flags, std::ostream& out);
int RunExampleQ(const CommonFlags& flags, const ExampleQFlags& example,
                std::ostream& out);
int RunSelftest(const CommonFlags& flags, std::ostream& out);

}  // namespace henig::cli

#endif  // HENIG_TOOLS_COMMANDS_H_
