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
#include <benchmark/benchmark.h>

#include "henig/certificate_generation.h"
#include "henig/certificates.h"
#include "henig/convex_kernel.h"
#include "henig/example_q.h"
#include "henig/fractional.h"
#include "henig/io.h"
#include "test_instances.h"

namespace henig {
namespace {

void BM_EpsSubdiffContains(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  testing::Rng rng(1);
  const PolyhedralFn f = testing::RandomPolyhedralFn(rng, n, 5, true);
  const Vec xbar(n, 0.5);
  const Vec xs = testing::RandomEpsSubgradient(rng, f, xbar, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EpsSubdiffContains(f, xbar, 0.1, xs));
  }
}
BENCHMARK(BM_EpsSubdiffContains)->Arg(1)->Arg(2)->Arg(3);

void BM_BrRegularize(benchmark::State& state) {
  testing::Rng rng(2);
  const PolyhedralFn f = testing::RandomPolyhedralFn(rng, 2, 4, false);
  const Vec xbar{0.25, -0.5};
  const Vec xs = testing::RandomEpsSubgradient(rng, f, xbar, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BrRegularize(f, xbar, 0.05, xs));
  }
}
BENCHMARK(BM_BrRegularize);

void BM_ExampleBruteforce(benchmark::State& state) {
  const FractionalProblem q = ExampleQProblem().problem;
  ScanOptions o;
  o.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(HenigCheckBruteforce(
        q, ExampleQPoint(), DefaultEpsLadder(), ExampleQGrid(), o));
  }
}
BENCHMARK(BM_ExampleBruteforce)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_VerifyExampleCertificate(benchmark::State& state) {
  const FractionalProblem q = ExampleQProblem().problem;
  const AnyCertificate cert =
      ParseCertificate(ExampleQCertificateJson(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(VerifyAny(q, ExampleQPoint(), cert, VerifyOptions{}));
  }
}
BENCHMARK(BM_VerifyExampleCertificate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GenerateToyCertificate(benchmark::State& state) {
  const FractionalProblem toy = AbsoluteValueToy().problem;
  Vec gammas;
  for (int n = 1; n <= state.range(0); ++n) gammas.push_back(1.0 / n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        GenerateEpsCertificate(toy, Vec{1.0}, Vec{1.0, 1.0}, gammas));
  }
}
BENCHMARK(BM_GenerateToyCertificate)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace henig

BENCHMARK_MAIN();
