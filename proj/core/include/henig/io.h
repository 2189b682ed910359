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
#ifndef HENIG_IO_H_
#define HENIG_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "henig/certificate_generation.h"
#include "henig/certificates.h"
#include "henig/cones.h"
#include "henig/convex_fn.h"
#include "henig/fractional.h"
#include "henig/polyhedron.h"

namespace henig {

using Json = nlohmann::json;

// JSON loading. Every malformed document raises Error(kSchema) with a JSON
// pointer-like path in the message.

Json LoadJsonFile(const std::filesystem::path& path);
// Two-space indented, trailing newline. Doubles use nlohmann's shortest
// round-trip form.
void WriteJsonFile(const std::filesystem::path& path, const Json& doc);
std::string DumpJson(const Json& doc);

// Non-finite doubles are written as the strings "Infinity" / "-Infinity".
Json NumberToJson(double v);

Polyhedron ParsePolyhedron(const Json& j, int dim,
                           const std::string& path = "C");
Json PolyhedronToJson(const Polyhedron& p);

ConvexFn ParseFunction(const Json& j, int dim, const std::string& path);
Json FunctionToJson(const ConvexFn& f);

PolyhedralCone ParseCone(const Json& j, const std::string& path = "cone");
Json ConeToJson(const PolyhedralCone& cone);

struct ProblemFile {
  std::string name;
  std::string description;
  FractionalProblem problem;
};

ProblemFile ParseProblem(const Json& j);
Json ProblemToJson(const ProblemFile& file);
ProblemFile LoadProblem(const std::filesystem::path& path);

// One term of a closed-form sequence: value(n) = coef / n^power, power in
// {0, 1, 2}. Accepted text: "c", "c/n", "c/n^2" with c a decimal literal.
struct SequenceTerm {
  double coef = 0.0;
  int power = 0;

  double operator()(int n) const;
};

SequenceTerm ParseSequenceTerm(std::string_view text);
std::string SequenceTermToString(const SequenceTerm& term);

using AnyCertificate =
    std::variant<EpiCertificate, EpsCertificate, ExactCertificate>;

CertificateKind KindOf(const AnyCertificate& cert);
int Horizon(const AnyCertificate& cert);

// Expands an optional "closed_form" block for n = 1..N. Fields present in
// an explicit entry win over the closed form.
AnyCertificate ParseCertificate(const Json& j);
Json CertificateToJson(const AnyCertificate& cert);
AnyCertificate LoadCertificate(const std::filesystem::path& path);

VerificationReport VerifyAny(const FractionalProblem& prob,
                             std::span<const double> xbar,
                             const AnyCertificate& cert,
                             const VerifyOptions& options);

Json VerdictToJson(const EfficiencyVerdict& v);
Json EquivalenceToJson(const EquivalenceResult& r);
Json VerificationReportToJson(const VerificationReport& r);
Json KktToJson(const KktResult& r);
Json SlaterToJson(const SlaterResult& r);
Json TransferRecordsToJson(const std::vector<TransferRecord>& records);

// Parses "0,0.5" style vectors.
Vec ParseVectorText(std::string_view text);

}  // namespace henig

#endif  // HENIG_IO_H_
