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
#ifndef HENIG_CERTIFICATE_GENERATION_H_
#define HENIG_CERTIFICATE_GENERATION_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "henig/certificates.h"
#include "henig/convex_kernel.h"
#include "henig/fractional.h"
#include "henig/grid.h"

namespace henig {

struct GenerateOptions {
  // Force v* = 0 (and hence u* = 0); the only way to handle non-polyhedral
  // constraint maps.
  bool pin_vstar = false;
};

struct GeneratedCertificate {
  EpsCertificate cert;
  // Optimal value of the per-n LP:
  //   ||sum x* + sum w* + c* + u*||_inf + ||y* + v*||_1.
  Vec residuals;
};

// One LP per index n with eps = gammas[n-1]. Requires polyhedral numerators
// and denominator terms (zero-scaled terms are fine), and polyhedral h
// unless v* is pinned. Throws Error(kUnsupportedData / kUnsupportedDomain /
// kConjugateUnsupported) naming the offending block.
GeneratedCertificate GenerateEpsCertificate(const FractionalProblem& prob,
                                            std::span<const double> xbar,
                                            std::span<const double> lambda,
                                            std::span<const double> gammas,
                                            const GenerateOptions& options = {});

struct LambdaSearchResult {
  Vec lambda;
  GeneratedCertificate generated;
  int candidates_tried = 0;
};

// Tries lambda = (1, ..., 1) first, then the strictly positive points
// k / resolution of the simplex grid, keeping the candidate with the smallest
// final residual; stops early once it is <= target.
LambdaSearchResult GenerateWithLambdaSearch(const FractionalProblem& prob,
                                            std::span<const double> xbar,
                                            std::span<const double> gammas,
                                            const GenerateOptions& options,
                                            int resolution, double target);

// Epigraph heights from eps-subgradients:
//   a_i = <x*_i, xbar> + gamma - lambda_i f_i(xbar), and likewise for
//   b_i, d (indicator of C), s (indicator of -Y+ at h(xbar)) and t.
EpiCertificate EpiFromEps(const FractionalProblem& prob,
                          std::span<const double> xbar,
                          const EpsCertificate& cert);

struct TransferRecord {
  int n = 0;
  std::string block;
  double gamma = 0.0;
  double distance = 0.0;
  double dual_distance = 0.0;
  double value_gap = 0.0;
};

struct ExactTransfer {
  ExactCertificate cert;
  std::vector<TransferRecord> records;
};

// Blockwise regularization with eps = gamma_n. Error(kBRSearchFailed) is
// rethrown with the block name and index.
ExactTransfer EpsToExact(const FractionalProblem& prob,
                         std::span<const double> xbar,
                         const EpsCertificate& cert,
                         const BrOptions& options = {});

struct KktResult {
  enum class Status { kHolds, kInfeasible, kUnsupported };

  Status status = Status::kUnsupported;
  Vec ystar;
  std::string reason;
};

const char* KktStatusName(KktResult::Status status);

// Exact multiplier condition at xbar: y* in Y+*, <y*, h(xbar)> = 0 and
// 0 in sum_i d(lambda_i (f_i - nu_i g_i))(xbar) + N(xbar, C) + d(y* o h)(xbar),
// decided by one LP over polyhedral data.
KktResult ClassicalKktCheck(const FractionalProblem& prob,
                            std::span<const double> xbar,
                            std::span<const double> lambda);

inline constexpr double kSlaterMargin = 1e-6;

struct SlaterResult {
  bool holds = false;
  Vec witness;
  std::size_t samples = 0;  // grid points of C where h is finite
};

// Looks for a grid point a in C with H h(a) <= -margin componentwise.
// Throws Error(kInequalityFormRequired) without an inequality form.
SlaterResult SlaterCheck(const FractionalProblem& prob, const GridSpec& grid,
                         double margin = kSlaterMargin);

}  // namespace henig

#endif  // HENIG_CERTIFICATE_GENERATION_H_
