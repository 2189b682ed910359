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
#ifndef HENIG_CERTIFICATES_H_
#define HENIG_CERTIFICATES_H_

#include <span>
#include <string>
#include <vector>

#include "henig/convex_fn.h"
#include "henig/convex_kernel.h"
#include "henig/fractional.h"
#include "henig/linear_algebra.h"

namespace henig {

// Which family of sequential conditions a certificate realizes.
enum class CertificateKind {
  kEpigraph,  // conjugate-epigraph form, tag "4.2"
  kEpsilon,   // eps-subdifferential form, tag "4.3"
  kExact,     // exact subdifferentials at nearby points, tag "4.4"
};

const char* CertificateTag(CertificateKind kind);
// Throws Error(kInvalidInput) for unknown tags.
CertificateKind ParseCertificateTag(std::string_view tag);

// Strictly positive weights, one per objective.
void ValidateLambda(std::span<const double> lambda, int m);

struct EpiEntry {
  std::vector<Vec> xstar;  // per objective
  Vec a;
  std::vector<Vec> wstar;
  Vec b;
  Vec cstar;
  double d = 0.0;
  Vec ystar;
  double s = 0.0;
  Vec vstar;
  Vec ustar;
  double t = 0.0;
};

struct EpiCertificate {
  Vec lambda;
  std::vector<EpiEntry> entries;  // entries[k] is index n = k + 1
};

struct EpsEntry {
  double gamma = 0.0;
  std::vector<Vec> xstar;
  std::vector<Vec> wstar;
  Vec cstar;
  Vec ystar;
  Vec vstar;
  Vec ustar;
};

struct EpsCertificate {
  Vec lambda;
  std::vector<EpsEntry> entries;
};

struct ExactEntry {
  std::vector<Vec> x;
  std::vector<Vec> xstar;
  std::vector<Vec> w;
  std::vector<Vec> wstar;
  Vec c;
  Vec cstar;
  Vec y;
  Vec ystar;
  Vec vstar;
  Vec u;
  Vec ustar;
};

struct ExactCertificate {
  Vec lambda;
  std::vector<ExactEntry> entries;
};

inline constexpr int kMinimumHorizon = 4;

struct VerifyOptions {
  double membership_tol = kMembershipTolerance;
  // Final-value threshold of the convergence rule.
  double conv_tol = 1e-3;
  // Allowed increase between consecutive entries in the checked tail.
  double jitter = 1e-9;
};

struct MembershipCheck {
  int n = 0;  // 1-based sequence index
  std::string block;
  bool holds = false;
  double slack = 0.0;  // +inf reported as IEEE infinity
};

struct ResidualTrace {
  std::string name;
  Vec values;
  bool converges = false;
};

struct VerificationReport {
  CertificateKind kind = CertificateKind::kEpsilon;
  int horizon = 0;
  VerifyOptions options;
  std::vector<MembershipCheck> memberships;
  int membership_failures = 0;
  // dual_residual, y_residual, scalar_residual, and for exact certificates
  // point_residual.
  std::vector<ResidualTrace> traces;
  bool accept = false;
  std::string reason;

  const ResidualTrace* Trace(std::string_view name) const;
};

// Finite-horizon decision rule: last value <= conv_tol and the trace is
// non-increasing (up to jitter) over its last ceil(N/2) entries.
bool TraceConverges(std::span<const double> values, const VerifyOptions& o);

// -v* o h as a ConvexFn: the zero function when v* = 0, otherwise the
// polyhedral sum of (-v*_j) h_j. Throws Error(kConjugateUnsupported) when a
// black-box component carries a nonzero weight.
ConvexFn NegVstarComposition(const FractionalProblem& prob,
                             std::span<const double> vstar);

// lambda_i * f_i and lambda_i * nu_i * (-g_i).
ConvexFn WeightedNumerator(const FractionalProblem& prob, int i,
                           double lambda);
ConvexFn WeightedDenominator(const FractionalProblem& prob, int i,
                             double lambda, double nu);

// Each verifier throws Error(kHorizonTooShort) for N < 4 and
// Error(kInvalidInput) when xbar is infeasible; malformed entries raise
// kDimensionMismatch.
VerificationReport VerifyEpiCertificate(const FractionalProblem& prob,
                                        std::span<const double> xbar,
                                        const EpiCertificate& cert,
                                        const VerifyOptions& options = {});
VerificationReport VerifyEpsCertificate(const FractionalProblem& prob,
                                        std::span<const double> xbar,
                                        const EpsCertificate& cert,
                                        const VerifyOptions& options = {});
VerificationReport VerifyExactCertificate(const FractionalProblem& prob,
                                          std::span<const double> xbar,
                                          const ExactCertificate& cert,
                                          const VerifyOptions& options = {});

}  // namespace henig

#endif  // HENIG_CERTIFICATES_H_
