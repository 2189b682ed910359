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
#include "henig/io.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "henig/error.h"
#include "henig/example_q.h"
#include "test_instances.h"

namespace henig {
namespace {

const std::filesystem::path kData = HENIG_DATA_DIR;

ErrorCode CodeOf(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(SequenceTermTest, Grammar) {
  EXPECT_EQ(ParseSequenceTerm("1/n")(4), 0.25);
  EXPECT_EQ(ParseSequenceTerm("3/n^2")(2), 0.75);
  EXPECT_EQ(ParseSequenceTerm("-2")(100), -2.0);
  EXPECT_EQ(ParseSequenceTerm(" 0.5 / n ")(5), 0.1);
  for (const char* bad : {"", "n", "1/m", "1/n^3", "1/(n+1)", "abc", "1/n/n"}) {
    EXPECT_EQ(CodeOf([&] { ParseSequenceTerm(bad); }), ErrorCode::kSchema) << bad;
  }
  for (const char* s : {"1/n", "0", "-2.5/n^2", "0.001"}) {
    const SequenceTerm t = ParseSequenceTerm(s);
    const SequenceTerm back = ParseSequenceTerm(SequenceTermToString(t));
    EXPECT_EQ(back.coef, t.coef);
    EXPECT_EQ(back.power, t.power);
  }
}

TEST(CertificateIoTest, ClosedFormExpansion) {
  const AnyCertificate c = ParseCertificate(ExampleQCertificateJson(10));
  EXPECT_EQ(KindOf(c), CertificateKind::kEpigraph);
  EXPECT_EQ(Horizon(c), 10);
  const auto& epi = std::get<EpiCertificate>(c);
  EXPECT_EQ(epi.entries[3].cstar, (Vec{0.0, 0.25}));
  EXPECT_EQ(epi.entries[3].xstar[1], (Vec{-2.0, 0.0}));
  EXPECT_EQ(epi.entries[4].d, 0.2);
}

TEST(CertificateIoTest, ExplicitEntriesOverrideClosedForm) {
  Json j = ExampleQCertificateJson(5);
  j["entries"] = Json::array({Json{{"d", 7.0}}});
  const auto epi = std::get<EpiCertificate>(ParseCertificate(j));
  EXPECT_EQ(epi.entries[0].d, 7.0);
  EXPECT_EQ(epi.entries[0].s, 1.0);
  EXPECT_EQ(epi.entries[1].d, 0.5);
}

TEST(CertificateIoTest, SchemaErrors) {
  Json j = ExampleQCertificateJson(5);
  j["theorem"] = "5.1";
  EXPECT_EQ(CodeOf([&] { ParseCertificate(j); }), ErrorCode::kSchema);
  j = ExampleQCertificateJson(5);
  j.erase("closed_form");
  EXPECT_EQ(CodeOf([&] { ParseCertificate(j); }), ErrorCode::kSchema);
  j = ExampleQCertificateJson(5);
  j["closed_form"]["d"] = "1/(n+1)";
  EXPECT_EQ(CodeOf([&] { ParseCertificate(j); }), ErrorCode::kSchema);
  j = ExampleQCertificateJson(5);
  j["closed_form"].erase("s");
  EXPECT_EQ(CodeOf([&] { ParseCertificate(j); }), ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([] { ParseCertificate(Json::parse("[1, 2]")); }),
            ErrorCode::kSchema);
}

TEST(CertificateIoTest, RoundTripIsByteIdentical) {
  const FractionalProblem toy = AbsoluteValueToy().problem;
  Vec gammas;
  for (int n = 1; n <= 30; ++n) gammas.push_back(1.0 / n);
  GenerateOptions o;
  const GeneratedCertificate g =
      GenerateEpsCertificate(toy, Vec{0.0}, Vec{1.0, 1.0}, gammas, o);
  for (const AnyCertificate& cert :
       {AnyCertificate(g.cert), AnyCertificate(EpiFromEps(toy, Vec{0.0}, g.cert)),
        AnyCertificate(EpsToExact(toy, Vec{0.0}, g.cert).cert),
        ParseCertificate(ExampleQCertificateJson(50))}) {
    const std::string first = DumpJson(CertificateToJson(cert));
    const AnyCertificate again = ParseCertificate(Json::parse(first));
    EXPECT_EQ(DumpJson(CertificateToJson(again)), first);
  }
}

TEST(CertificateIoTest, ShortestRoundTripNumbers) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5, 6.02214076e23}) {
    EXPECT_EQ(Json::parse(DumpJson(NumberToJson(v))).get<double>(), v);
  }
  EXPECT_EQ(NumberToJson(std::numeric_limits<double>::infinity()), "Infinity");
}

TEST(CertificateIoTest, FileRoundTrip) {
  const std::filesystem::path p =
      std::filesystem::temp_directory_path() / "henig_io_test_cert.json";
  const Json j = CertificateToJson(ParseCertificate(ExampleQCertificateJson(8)));
  WriteJsonFile(p, j);
  EXPECT_EQ(DumpJson(CertificateToJson(LoadCertificate(p))), DumpJson(j));
  std::filesystem::remove(p);
  EXPECT_THROW(LoadJsonFile(p), Error);
}

TEST(ProblemIoTest, ShippedFilesMatchEmbeddedProblems) {
  const ProblemFile q = LoadProblem(kData / "q.json");
  const ProblemFile toy = LoadProblem(kData / "toy.json");
  const Json qj = ProblemToJson(q);
  const Json ej = ProblemToJson(ExampleQProblem());
  for (const char* key : {"n", "objectives", "h", "cone", "C"}) {
    EXPECT_EQ(qj[key], ej[key]) << key;
  }
  const Json tj = ProblemToJson(toy);
  const Json aj = ProblemToJson(AbsoluteValueToy());
  for (const char* key : {"n", "objectives", "h", "cone", "C"}) {
    EXPECT_EQ(tj[key], aj[key]) << key;
  }
}

TEST(ProblemIoTest, RoundTrip) {
  testing::Rng rng(5);
  for (int s = 0; s < 10; ++s) {
    const testing::RandomFractional inst =
        testing::RandomFractionalInstance(rng, 1 + s % 2);
    const Json j = ProblemToJson({"random", "", inst.problem});
    const ProblemFile back = ParseProblem(j);
    EXPECT_EQ(DumpJson(ProblemToJson(back)), DumpJson(j));
    const Vec x(inst.problem.n(), 0.25);
    EXPECT_EQ(back.problem.Numerator(0, x), inst.problem.Numerator(0, x));
  }
  const Json q = ProblemToJson(ExampleQProblem());
  EXPECT_EQ(DumpJson(ProblemToJson(ParseProblem(q))), DumpJson(q));
}

TEST(ProblemIoTest, SchemaAndDimensionErrors) {
  Json j = ProblemToJson(AbsoluteValueToy());
  j["objectives"][0]["f"]["pieces"][0]["a"] = Json::array({1.0, 2.0});
  // Dimension errors in a file are schema errors (exit 65 on the CLI).
  EXPECT_EQ(CodeOf([&] { ParseProblem(j); }), ErrorCode::kSchema);
  j = ProblemToJson(AbsoluteValueToy());
  j.erase("cone");
  EXPECT_EQ(CodeOf([&] { ParseProblem(j); }), ErrorCode::kSchema);
  j = ProblemToJson(AbsoluteValueToy());
  j["h"][0] = Json{{"type", "builtin"}, {"name", "cosine"}, {"dim", 1}};
  EXPECT_EQ(CodeOf([&] { ParseProblem(j); }), ErrorCode::kSchema);
  j = ProblemToJson(AbsoluteValueToy());
  j["objectives"] = Json::array({j["objectives"][0]});
  EXPECT_NE(CodeOf([&] { ParseProblem(j); }), ErrorCode::kInternal);
}

TEST(ProblemIoTest, ConeForms) {
  const PolyhedralCone g = ParseCone(
      Json{{"type", "generators"}, {"vectors", Json::array({Json::array({1.0, 0.0}),
                                                           Json::array({1.0, 1.0})})}});
  EXPECT_TRUE(g.has_generators());
  EXPECT_TRUE(g.Contains(Vec{2.0, 1.0}));
  EXPECT_FALSE(g.Contains(Vec{0.0, 1.0}));
  const PolyhedralCone h = ParseCone(ConeToJson(g));
  EXPECT_EQ(h.generators(), g.generators());
  EXPECT_TRUE(ParseCone(Json{{"type", "nonneg_orthant"}, {"dim", 3}}).is_orthant());
  EXPECT_THROW(ParseCone(Json{{"type", "ice_cream"}}), Error);
}

TEST(VectorTextTest, Parse) {
  EXPECT_EQ(ParseVectorText("0,0.5"), (Vec{0.0, 0.5}));
  EXPECT_EQ(ParseVectorText(" -1 , 2e-3 "), (Vec{-1.0, 0.002}));
  EXPECT_THROW(ParseVectorText("1,,2"), Error);
  EXPECT_THROW(ParseVectorText("a"), Error);
  EXPECT_THROW(ParseVectorText(""), Error);
}

TEST(ReportIoTest, VerificationReportFields) {
  const VerificationReport r = VerifyAny(
      ExampleQProblem().problem, ExampleQPoint(),
      ParseCertificate(ExampleQCertificateJson(20)), VerifyOptions{});
  const Json j = VerificationReportToJson(r);
  EXPECT_EQ(j["theorem"], "4.2");
  EXPECT_EQ(j["N"], 20);
  EXPECT_EQ(j["traces"]["dual_residual"]["values"].size(), 20u);
  EXPECT_TRUE(j.contains("tolerances"));
  EXPECT_FALSE(j["accept"].get<bool>());  // 6/20 > 1e-3
}

}  // namespace
}  // namespace henig
