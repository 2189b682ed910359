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
#include "henig/certificates.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "henig/error.h"

namespace henig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string Indexed(const char* name, int i) {
  return std::string(name) + "[" + std::to_string(i + 1) + "]";
}

// max_g -<y*, g> over generators; <= tol means y* in Y+*.
double PolarSlack(const PolyhedralCone& cone, std::span<const double> ystar) {
  if (!cone.has_generators()) {
    throw Error(ErrorCode::kGeneratorFormRequired,
                "polar membership needs the generator form of the cone");
  }
  double worst = -kInf;
  for (const Vec& g : cone.generators()) worst = std::max(worst, -Dot(ystar, g));
  return worst;
}

class ReportBuilder {
 public:
  ReportBuilder(CertificateKind kind, int horizon, const VerifyOptions& o) {
    report_.kind = kind;
    report_.horizon = horizon;
    report_.options = o;
  }

  void Record(int n, std::string block, double slack) {
    const bool holds = slack <= report_.options.membership_tol;
    report_.memberships.push_back({n, std::move(block), holds, slack});
    if (!holds) ++report_.membership_failures;
  }

  void Record(int n, std::string block, const Membership& m) {
    Record(n, std::move(block), m.slack.ToDouble());
  }

  // Runs a membership query, turning "point outside the domain" into a
  // failed check.
  template <typename Fn>
  void RecordAt(int n, std::string block, Fn&& query) {
    try {
      Record(n, std::move(block), query());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPointOutsideDomain) throw;
      Record(n, std::move(block), kInf);
    }
  }

  void AddTrace(std::string name, Vec values) {
    const bool ok = TraceConverges(values, report_.options);
    report_.traces.push_back({std::move(name), std::move(values), ok});
  }

  VerificationReport Finish() {
    report_.accept = true;
    if (report_.membership_failures > 0) {
      report_.accept = false;
      for (const MembershipCheck& c : report_.memberships) {
        if (c.holds) continue;
        std::ostringstream out;
        out << "membership " << c.block << " fails at n=" << c.n
            << " (slack " << c.slack << ")";
        report_.reason = out.str();
        break;
      }
      return std::move(report_);
    }
    for (const ResidualTrace& t : report_.traces) {
      if (!t.converges) {
        report_.accept = false;
        std::ostringstream out;
        out << t.name << " does not converge (final value "
            << t.values.back() << ")";
        report_.reason = out.str();
        return std::move(report_);
      }
    }
    report_.reason = "all memberships hold and all residual traces converge";
    return std::move(report_);
  }

 private:
  VerificationReport report_;
};

struct Context {
  Vec nu;
  Vec hbar;
};

Context Prepare(const FractionalProblem& prob, std::span<const double> xbar,
                std::span<const double> lambda, std::size_t horizon) {
  if (horizon < static_cast<std::size_t>(kMinimumHorizon)) {
    throw Error(ErrorCode::kHorizonTooShort,
                "certificate horizon " + std::to_string(horizon) +
                    " is below the minimum of " +
                    std::to_string(kMinimumHorizon));
  }
  CheckDim(xbar.size(), prob.n(), "candidate point");
  ValidateLambda(lambda, prob.m());
  if (!Feasible(prob, xbar)) {
    throw Error(ErrorCode::kInvalidInput, "candidate point is infeasible");
  }
  Context ctx;
  ctx.nu = NuValues(prob, xbar);
  ctx.hbar = *prob.EvaluateH(xbar);
  return ctx;
}

void CheckBlocks(const std::vector<Vec>& blocks, int m, int dim,
                 const char* what) {
  CheckDim(blocks.size(), m, what);
  for (const Vec& v : blocks) CheckDim(v.size(), dim, what);
}

double DualResidual(const std::vector<Vec>& xs, const std::vector<Vec>& ws,
                    std::span<const double> c, std::span<const double> u) {
  Vec total(c.begin(), c.end());
  for (const Vec& v : xs) Axpy(1.0, v, total);
  for (const Vec& v : ws) Axpy(1.0, v, total);
  Axpy(1.0, u, total);
  return NormInf(total);
}

}  // namespace

const char* CertificateTag(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kEpigraph:
      return "4.2";
    case CertificateKind::kEpsilon:
      return "4.3";
    case CertificateKind::kExact:
      return "4.4";
  }
  return "?";
}

CertificateKind ParseCertificateTag(std::string_view tag) {
  if (tag == "4.2") return CertificateKind::kEpigraph;
  if (tag == "4.3") return CertificateKind::kEpsilon;
  if (tag == "4.4") return CertificateKind::kExact;
  throw Error(ErrorCode::kInvalidInput,
              "unknown certificate tag '" + std::string(tag) + "'");
}

void ValidateLambda(std::span<const double> lambda, int m) {
  CheckDim(lambda.size(), m, "lambda");
  for (double l : lambda) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::kInvalidInput, "lambda entries must be > 0");
    }
  }
}

const ResidualTrace* VerificationReport::Trace(std::string_view name) const {
  for (const ResidualTrace& t : traces) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

bool TraceConverges(std::span<const double> values, const VerifyOptions& o) {
  if (values.empty()) return false;
  const std::size_t n = values.size();
  if (!(values[n - 1] <= o.conv_tol)) return false;
  const std::size_t tail = (n + 1) / 2;
  for (std::size_t k = n - tail; k + 1 < n; ++k) {
    if (!(values[k + 1] <= values[k] + o.jitter)) return false;
  }
  return true;
}

ConvexFn NegVstarComposition(const FractionalProblem& prob,
                             std::span<const double> vstar) {
  CheckDim(vstar.size(), prob.p(), "v*");
  const ConvexFn zero =
      ConvexFn::Scaled(0.0, ConvexFn(PolyhedralFn::Zero(prob.n())));
  std::optional<PolyhedralFn> total;
  for (int j = 0; j < prob.p(); ++j) {
    const double c = -vstar[j];
    if (c == 0.0) continue;
    const std::optional<PolyhedralFn> term = ScaleTerm(c, prob.h()[j]).AsPolyhedral();
    if (!term) {
      throw Error(ErrorCode::kConjugateUnsupported,
                  "v* puts weight on non-polyhedral constraint component " +
                      std::to_string(j + 1));
    }
    total = total ? Sum(*total, *term) : *term;
  }
  if (!total) return zero;
  return ConvexFn(*total);
}

ConvexFn WeightedNumerator(const FractionalProblem& prob, int i,
                           double lambda) {
  return ConvexFn::Scaled(lambda, prob.objectives()[i].f);
}

ConvexFn WeightedDenominator(const FractionalProblem& prob, int i,
                             double lambda, double nu) {
  return ScaleTerm(lambda * nu, prob.objectives()[i].neg_g);
}

VerificationReport VerifyEpiCertificate(const FractionalProblem& prob,
                                        std::span<const double> xbar,
                                        const EpiCertificate& cert,
                                        const VerifyOptions& options) {
  const Context ctx = Prepare(prob, xbar, cert.lambda, cert.entries.size());
  const int m = prob.m();
  const int n_dim = prob.n();
  const int p = prob.p();
  std::vector<ConvexFn> fs;
  std::vector<ConvexFn> gs;
  for (int i = 0; i < m; ++i) {
    fs.push_back(WeightedNumerator(prob, i, cert.lambda[i]));
    gs.push_back(WeightedDenominator(prob, i, cert.lambda[i], ctx.nu[i]));
  }

  ReportBuilder rb(CertificateKind::kEpigraph,
                   static_cast<int>(cert.entries.size()), options);
  Vec dual;
  Vec yres;
  Vec scalar;
  for (std::size_t k = 0; k < cert.entries.size(); ++k) {
    const EpiEntry& e = cert.entries[k];
    const int n = static_cast<int>(k) + 1;
    CheckBlocks(e.xstar, m, n_dim, "x*");
    CheckBlocks(e.wstar, m, n_dim, "w*");
    CheckDim(e.a.size(), m, "a");
    CheckDim(e.b.size(), m, "b");
    CheckDim(e.cstar.size(), n_dim, "c*");
    CheckDim(e.ustar.size(), n_dim, "u*");
    CheckDim(e.ystar.size(), p, "y*");
    CheckDim(e.vstar.size(), p, "v*");

    for (int i = 0; i < m; ++i) {
      rb.Record(n, Indexed("x*", i),
                EpiConjugateContains(fs[i], e.xstar[i], e.a[i]));
    }
    for (int i = 0; i < m; ++i) {
      rb.Record(n, Indexed("w*", i),
                EpiConjugateContains(gs[i], e.wstar[i], e.b[i]));
    }
    rb.Record(n, "c*",
              (SupportFunction(prob.constraint_set(), e.cstar) - e.d)
                  .ToDouble());
    rb.Record(n, "y*", PolarSlack(prob.cone(), e.ystar));
    rb.Record(n, "s", -e.s);
    rb.Record(n, "v*", PolarSlack(prob.cone(), Negate(e.vstar)));
    rb.Record(n, "u*",
              EpiConjugateContains(NegVstarComposition(prob, e.vstar), e.ustar,
                                   e.t));

    dual.push_back(DualResidual(e.xstar, e.wstar, e.cstar, e.ustar));
    yres.push_back(NormInf(Add(e.ystar, e.vstar)));
    double heights = e.d + e.t + e.s;
    for (int i = 0; i < m; ++i) heights += e.a[i] + e.b[i];
    scalar.push_back(std::fabs(heights));
  }
  rb.AddTrace("dual_residual", std::move(dual));
  rb.AddTrace("y_residual", std::move(yres));
  rb.AddTrace("scalar_residual", std::move(scalar));
  return rb.Finish();
}

VerificationReport VerifyEpsCertificate(const FractionalProblem& prob,
                                        std::span<const double> xbar,
                                        const EpsCertificate& cert,
                                        const VerifyOptions& options) {
  const Context ctx = Prepare(prob, xbar, cert.lambda, cert.entries.size());
  const int m = prob.m();
  const int n_dim = prob.n();
  const int p = prob.p();
  std::vector<ConvexFn> fs;
  std::vector<ConvexFn> gs;
  for (int i = 0; i < m; ++i) {
    fs.push_back(WeightedNumerator(prob, i, cert.lambda[i]));
    gs.push_back(WeightedDenominator(prob, i, cert.lambda[i], ctx.nu[i]));
  }

  ReportBuilder rb(CertificateKind::kEpsilon,
                   static_cast<int>(cert.entries.size()), options);
  Vec dual;
  Vec yres;
  Vec gammas;
  for (std::size_t k = 0; k < cert.entries.size(); ++k) {
    const EpsEntry& e = cert.entries[k];
    const int n = static_cast<int>(k) + 1;
    CheckBlocks(e.xstar, m, n_dim, "x*");
    CheckBlocks(e.wstar, m, n_dim, "w*");
    CheckDim(e.cstar.size(), n_dim, "c*");
    CheckDim(e.ustar.size(), n_dim, "u*");
    CheckDim(e.ystar.size(), p, "y*");
    CheckDim(e.vstar.size(), p, "v*");
    if (!std::isfinite(e.gamma)) {
      throw Error(ErrorCode::kInvalidInput, "gamma must be finite");
    }
    rb.Record(n, "gamma", -e.gamma);
    const double gamma = std::max(0.0, e.gamma);

    for (int i = 0; i < m; ++i) {
      rb.Record(n, Indexed("x*", i),
                EpsSubdiffContains(fs[i], xbar, gamma, e.xstar[i]));
    }
    for (int i = 0; i < m; ++i) {
      rb.Record(n, Indexed("w*", i),
                EpsSubdiffContains(gs[i], xbar, gamma, e.wstar[i]));
    }
    rb.Record(n, "c*",
              EpsNormalContains(prob.constraint_set(), xbar, gamma, e.cstar));
    rb.Record(n, "y* polar", PolarSlack(prob.cone(), e.ystar));
    rb.Record(n, "y*",
              MinusConeEpsNormalContains(prob.cone(), ctx.hbar, gamma,
                                         e.ystar));
    rb.Record(n, "v*", PolarSlack(prob.cone(), Negate(e.vstar)));
    rb.Record(n, "u*",
              EpsSubdiffContains(NegVstarComposition(prob, e.vstar), xbar,
                                 gamma, e.ustar));

    dual.push_back(DualResidual(e.xstar, e.wstar, e.cstar, e.ustar));
    yres.push_back(NormInf(Add(e.ystar, e.vstar)));
    gammas.push_back(e.gamma);
  }
  rb.AddTrace("dual_residual", std::move(dual));
  rb.AddTrace("y_residual", std::move(yres));
  rb.AddTrace("scalar_residual", std::move(gammas));
  return rb.Finish();
}

VerificationReport VerifyExactCertificate(const FractionalProblem& prob,
                                          std::span<const double> xbar,
                                          const ExactCertificate& cert,
                                          const VerifyOptions& options) {
  const Context ctx = Prepare(prob, xbar, cert.lambda, cert.entries.size());
  const int m = prob.m();
  const int n_dim = prob.n();
  const int p = prob.p();
  std::vector<ConvexFn> fs;
  std::vector<ConvexFn> gs;
  Vec fbar(m);
  Vec gbar(m);
  for (int i = 0; i < m; ++i) {
    fs.push_back(WeightedNumerator(prob, i, cert.lambda[i]));
    gs.push_back(WeightedDenominator(prob, i, cert.lambda[i], ctx.nu[i]));
    fbar[i] = fs[i](xbar).ToDouble();
    gbar[i] = gs[i](xbar).ToDouble();
  }

  ReportBuilder rb(CertificateKind::kExact,
                   static_cast<int>(cert.entries.size()), options);
  Vec dual;
  Vec yres;
  Vec scalar;
  Vec point;
  for (std::size_t k = 0; k < cert.entries.size(); ++k) {
    const ExactEntry& e = cert.entries[k];
    const int n = static_cast<int>(k) + 1;
    CheckBlocks(e.x, m, n_dim, "x");
    CheckBlocks(e.xstar, m, n_dim, "x*");
    CheckBlocks(e.w, m, n_dim, "w");
    CheckBlocks(e.wstar, m, n_dim, "w*");
    for (const Vec* v : {&e.c, &e.cstar, &e.u, &e.ustar}) {
      CheckDim(v->size(), n_dim, "exact entry vector");
    }
    for (const Vec* v : {&e.y, &e.ystar, &e.vstar}) {
      CheckDim(v->size(), p, "exact entry vector");
    }

    const ConvexFn composite = NegVstarComposition(prob, e.vstar);
    for (int i = 0; i < m; ++i) {
      rb.RecordAt(n, Indexed("x*", i), [&] {
        return EpsSubdiffContains(fs[i], e.x[i], 0.0, e.xstar[i]);
      });
    }
    for (int i = 0; i < m; ++i) {
      rb.RecordAt(n, Indexed("w*", i), [&] {
        return EpsSubdiffContains(gs[i], e.w[i], 0.0, e.wstar[i]);
      });
    }
    rb.RecordAt(n, "c*", [&] {
      return EpsNormalContains(prob.constraint_set(), e.c, 0.0, e.cstar);
    });
    rb.RecordAt(n, "y*", [&] {
      return MinusConeEpsNormalContains(prob.cone(), e.y, 0.0, e.ystar);
    });
    rb.Record(n, "v*", PolarSlack(prob.cone(), Negate(e.vstar)));
    rb.RecordAt(n, "u*", [&] {
      return EpsSubdiffContains(composite, e.u, 0.0, e.ustar);
    });

    double gap = 0.0;
    double dist = 0.0;
    for (int i = 0; i < m; ++i) {
      gap = std::max(gap, std::fabs(fs[i](e.x[i]).ToDouble() -
                                    Dot(e.xstar[i], Subtract(e.x[i], xbar)) -
                                    fbar[i]));
      gap = std::max(gap, std::fabs(gs[i](e.w[i]).ToDouble() -
                                    Dot(e.wstar[i], Subtract(e.w[i], xbar)) -
                                    gbar[i]));
      dist = std::max({dist, Distance2(e.x[i], xbar), Distance2(e.w[i], xbar)});
    }
    gap = std::max(gap, std::fabs(Dot(e.cstar, Subtract(e.c, xbar))));
    gap = std::max(gap, std::fabs(Dot(e.ystar, Subtract(e.y, ctx.hbar))));
    const std::optional<Vec> hu = prob.EvaluateH(e.u);
    if (hu) {
      gap = std::max(gap, std::fabs(Dot(e.ustar, Subtract(e.u, xbar)) +
                                    Dot(e.vstar, Subtract(*hu, ctx.hbar))));
    } else {
      gap = kInf;
    }
    dist = std::max({dist, Distance2(e.c, xbar), Distance2(e.u, xbar),
                     Distance2(e.y, ctx.hbar)});

    dual.push_back(DualResidual(e.xstar, e.wstar, e.cstar, e.ustar));
    yres.push_back(NormInf(Add(e.ystar, e.vstar)));
    scalar.push_back(gap);
    point.push_back(dist);
  }
  rb.AddTrace("dual_residual", std::move(dual));
  rb.AddTrace("y_residual", std::move(yres));
  rb.AddTrace("scalar_residual", std::move(scalar));
  rb.AddTrace("point_residual", std::move(point));
  return rb.Finish();
}

}  // namespace henig
