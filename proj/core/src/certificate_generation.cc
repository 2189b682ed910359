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
#include "henig/certificate_generation.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include "henig/error.h"
#include "henig/linprog.h"

namespace henig {
namespace {

// LP values this small are reported as exact zeros.
constexpr double kSnapToZero = 1e-13;

using Expr = std::vector<LpRow>;

void AddScaled(LpRow& dst, const LpRow& src, double k) {
  if (k == 0.0) return;
  for (const LpTerm& t : src) dst.push_back({t.var, k * t.coef});
}

void AddExpr(Expr& dst, const Expr& src) {
  for (std::size_t j = 0; j < src.size(); ++j) AddScaled(dst[j], src[j], 1.0);
}

double Snap(double v) { return std::fabs(v) < kSnapToZero ? 0.0 : v; }

Vec Extract(const Expr& expr, std::span<const double> sol) {
  Vec v(expr.size());
  for (std::size_t j = 0; j < expr.size(); ++j) {
    v[j] = Snap(EvaluateRow(expr[j], sol));
  }
  return v;
}

std::string Block(const char* name, int i) {
  return std::string(name) + "[" + std::to_string(i + 1) + "]";
}

struct Base {
  Vec nu;
  Vec hbar;
};

Base PrepareBase(const FractionalProblem& prob, std::span<const double> xbar) {
  CheckDim(xbar.size(), prob.n(), "candidate point");
  if (!Feasible(prob, xbar)) {
    throw Error(ErrorCode::kInvalidInput, "candidate point is infeasible");
  }
  return Base{NuValues(prob, xbar), *prob.EvaluateH(xbar)};
}

PolyhedralFn RequirePolyhedral(const ConvexFn& f, const std::string& block) {
  std::optional<PolyhedralFn> poly = f.AsPolyhedral();
  if (!poly) {
    throw Error(ErrorCode::kConjugateUnsupported,
                "block " + block + " is not polyhedral");
  }
  return *poly;
}

// Polyhedral data shared by every index n.
struct BlockData {
  std::vector<PolyhedralFn> numerators;
  std::vector<std::optional<PolyhedralFn>> denominators;  // nullopt: zero
  PolyhedralFn indicator_c;
  std::optional<PolyhedralFn> indicator_minus_cone;
  std::vector<std::optional<PolyhedralFn>> h;  // nullopt when pinned
};

BlockData MakeBlockData(const FractionalProblem& prob,
                        std::span<const double> lambda, const Vec& nu,
                        bool need_h) {
  BlockData data{{},
                 {},
                 PolyhedralFn::Indicator(prob.constraint_set()),
                 std::nullopt,
                 {}};
  for (int i = 0; i < prob.m(); ++i) {
    data.numerators.push_back(RequirePolyhedral(
        WeightedNumerator(prob, i, lambda[i]), Block("x*", i)));
    const ConvexFn g = WeightedDenominator(prob, i, lambda[i], nu[i]);
    if (g.IsZeroFunction()) {
      data.denominators.push_back(std::nullopt);
    } else {
      data.denominators.push_back(RequirePolyhedral(g, Block("w*", i)));
    }
  }
  if (prob.cone().has_inequalities()) {
    data.indicator_minus_cone =
        PolyhedralFn::Indicator(prob.cone().MinusConeAsPolyhedron());
  }
  for (int j = 0; j < prob.p(); ++j) {
    if (!need_h) {
      data.h.push_back(std::nullopt);
      continue;
    }
    std::optional<PolyhedralFn> hj = prob.h()[j].AsPolyhedral();
    if (!hj) {
      throw Error(ErrorCode::kUnsupportedData,
                  "constraint component " + std::to_string(j + 1) +
                      " is not polyhedral; pin v* to 0 to certify");
    }
    if (!hj->is_affine() && !hj->has_full_domain()) {
      throw Error(ErrorCode::kUnsupportedDomain,
                  "constraint component " + std::to_string(j + 1) +
                      " needs a full domain");
    }
    data.h.push_back(std::move(hj));
  }
  return data;
}

// y* in Y+* as an expression; inequality form gives y* = H^T pi.
Expr PolarExpr(LpBuilder& lp, const PolyhedralCone& cone) {
  const int p = cone.dim();
  Expr y(p);
  if (cone.has_inequalities()) {
    const Mat& h = cone.inequalities();
    const int pi = lp.AddVariables(static_cast<int>(h.size()), 0.0);
    for (std::size_t r = 0; r < h.size(); ++r) {
      for (int k = 0; k < p; ++k) {
        if (h[r][k] != 0.0) y[k].push_back({pi + static_cast<int>(r), h[r][k]});
      }
    }
    return y;
  }
  const int first = lp.AddVariables(p);
  for (int k = 0; k < p; ++k) y[k].push_back({first + k, 1.0});
  for (const Vec& g : cone.generators()) {
    LpRow row;
    for (int k = 0; k < p; ++k) AddScaled(row, y[k], g[k]);
    lp.AddGreaterEqual(row, 0.0);
  }
  return y;
}

// Adds the subdifferential of sum_j coef_j h_j at xbar (coef given as LP
// expressions) to 'total'; returns the accumulated gap row. Non-affine
// components need coef_j >= 0, which is enforced through a mass variable.
LpRow AddCompositeBlock(LpBuilder& lp, const BlockData& data,
                        const Expr& coef, std::span<const double> xbar,
                        Expr& total) {
  LpRow gap;
  for (std::size_t j = 0; j < data.h.size(); ++j) {
    if (coef[j].empty() || !data.h[j]) continue;
    const PolyhedralFn& hj = *data.h[j];
    if (hj.is_affine()) {
      const Vec& a = hj.pieces().front().slope;
      for (std::size_t k = 0; k < a.size(); ++k) AddScaled(total[k], coef[j], a[k]);
      continue;
    }
    const int mass = lp.AddVariable(0.0);
    LpRow link = coef[j];
    link.push_back({mass, -1.0});
    lp.AddEqual(link, 0.0);
    const SubgradientEncoding enc = EncodeSubgradients(lp, hj, xbar, mass);
    AddExpr(total, enc.functional);
    AddScaled(gap, enc.gap, 1.0);
  }
  return gap;
}

GeneratedCertificate GenerateWithData(const FractionalProblem& prob,
                                      std::span<const double> xbar,
                                      std::span<const double> lambda,
                                      std::span<const double> gammas,
                                      const GenerateOptions& options,
                                      const Base& base,
                                      const BlockData& data) {
  const int m = prob.m();
  const int n_dim = prob.n();
  const int p = prob.p();
  GeneratedCertificate out;
  out.cert.lambda.assign(lambda.begin(), lambda.end());
  for (double gamma : gammas) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      throw Error(ErrorCode::kInvalidInput, "gamma must be finite and >= 0");
    }
    LpBuilder lp;
    Expr total(n_dim);
    std::vector<Expr> xs(m, Expr(n_dim));
    std::vector<Expr> ws(m, Expr(n_dim));
    for (int i = 0; i < m; ++i) {
      const SubgradientEncoding enc =
          EncodeSubgradients(lp, data.numerators[i], xbar);
      lp.AddLessEqual(enc.gap, gamma);
      xs[i] = enc.functional;
      AddExpr(total, xs[i]);
      if (data.denominators[i]) {
        const SubgradientEncoding encw =
            EncodeSubgradients(lp, *data.denominators[i], xbar);
        lp.AddLessEqual(encw.gap, gamma);
        ws[i] = encw.functional;
        AddExpr(total, ws[i]);
      }
    }
    const SubgradientEncoding encc =
        EncodeSubgradients(lp, data.indicator_c, xbar);
    lp.AddLessEqual(encc.gap, gamma);
    const Expr cs = encc.functional;
    AddExpr(total, cs);

    Expr ys(p);
    if (data.indicator_minus_cone) {
      const SubgradientEncoding ency =
          EncodeSubgradients(lp, *data.indicator_minus_cone, base.hbar);
      lp.AddLessEqual(ency.gap, gamma);
      ys = ency.functional;
    } else {
      ys = PolarExpr(lp, prob.cone());
      LpRow row;
      for (int k = 0; k < p; ++k) AddScaled(row, ys[k], -base.hbar[k]);
      lp.AddLessEqual(row, gamma);
    }

    Expr vs(p);
    Expr us(n_dim);
    if (!options.pin_vstar) {
      const Expr polar = PolarExpr(lp, prob.cone());
      for (int k = 0; k < p; ++k) AddScaled(vs[k], polar[k], -1.0);
      // u* in the gamma-subdifferential of sum_j (-v*_j) h_j.
      const LpRow gap = AddCompositeBlock(lp, data, polar, xbar, us);
      lp.AddLessEqual(gap, gamma);
      AddExpr(total, us);
    }

    const int s = lp.AddVariable(0.0);
    for (int k = 0; k < n_dim; ++k) {
      LpRow up = total[k];
      up.push_back({s, -1.0});
      lp.AddLessEqual(up, 0.0);
      LpRow down = total[k];
      down.push_back({s, 1.0});
      lp.AddGreaterEqual(down, 0.0);
    }
    lp.AddObjective(s, -1.0);
    for (int k = 0; k < p; ++k) {
      const int r = lp.AddVariable(0.0);
      LpRow sum = ys[k];
      AddScaled(sum, vs[k], 1.0);
      LpRow up = sum;
      up.push_back({r, -1.0});
      lp.AddLessEqual(up, 0.0);
      sum.push_back({r, 1.0});
      lp.AddGreaterEqual(sum, 0.0);
      lp.AddObjective(r, -1.0);
    }

    const LpOutcome sol = SolveLp(lp.Build());
    if (!sol.optimal()) {
      throw Error(ErrorCode::kInternal,
                  std::string("certificate LP returned ") +
                      LpStatusName(sol.status));
    }
    EpsEntry e;
    e.gamma = gamma;
    for (int i = 0; i < m; ++i) {
      e.xstar.push_back(Extract(xs[i], sol.solution));
      e.wstar.push_back(Extract(ws[i], sol.solution));
    }
    e.cstar = Extract(cs, sol.solution);
    e.ystar = Extract(ys, sol.solution);
    e.vstar = Extract(vs, sol.solution);
    e.ustar = Extract(us, sol.solution);
    out.cert.entries.push_back(std::move(e));
    out.residuals.push_back(std::max(0.0, -sol.value));
  }
  return out;
}

}  // namespace

GeneratedCertificate GenerateEpsCertificate(const FractionalProblem& prob,
                                            std::span<const double> xbar,
                                            std::span<const double> lambda,
                                            std::span<const double> gammas,
                                            const GenerateOptions& options) {
  ValidateLambda(lambda, prob.m());
  const Base base = PrepareBase(prob, xbar);
  const BlockData data =
      MakeBlockData(prob, lambda, base.nu, !options.pin_vstar);
  return GenerateWithData(prob, xbar, lambda, gammas, options, base, data);
}

LambdaSearchResult GenerateWithLambdaSearch(const FractionalProblem& prob,
                                            std::span<const double> xbar,
                                            std::span<const double> gammas,
                                            const GenerateOptions& options,
                                            int resolution, double target) {
  const int m = prob.m();
  if (gammas.empty()) throw Error(ErrorCode::kInvalidInput, "empty schedule");
  std::vector<Vec> candidates{Vec(m, 1.0)};
  if (resolution >= m) {
    std::vector<int> k(m, 1);
    std::function<void(int, int)> fill = [&](int i, int left) {
      if (i == m - 1) {
        k[i] = left;
        Vec l(m);
        for (int j = 0; j < m; ++j) l[j] = static_cast<double>(k[j]) / resolution;
        candidates.push_back(std::move(l));
        return;
      }
      for (int v = 1; v <= left - (m - 1 - i); ++v) {
        k[i] = v;
        fill(i + 1, left - v);
      }
    };
    fill(0, resolution);
  }

  LambdaSearchResult best;
  for (const Vec& lambda : candidates) {
    GeneratedCertificate g =
        GenerateEpsCertificate(prob, xbar, lambda, gammas, options);
    ++best.candidates_tried;
    if (best.lambda.empty() ||
        g.residuals.back() < best.generated.residuals.back()) {
      best.lambda = lambda;
      best.generated = std::move(g);
    }
    if (best.generated.residuals.back() <= target) break;
  }
  return best;
}

EpiCertificate EpiFromEps(const FractionalProblem& prob,
                          std::span<const double> xbar,
                          const EpsCertificate& cert) {
  ValidateLambda(cert.lambda, prob.m());
  const Base base = PrepareBase(prob, xbar);
  const int m = prob.m();
  Vec fbar(m);
  Vec gbar(m);
  for (int i = 0; i < m; ++i) {
    fbar[i] = WeightedNumerator(prob, i, cert.lambda[i])(xbar).value();
    gbar[i] =
        WeightedDenominator(prob, i, cert.lambda[i], base.nu[i])(xbar).value();
  }
  EpiCertificate out;
  out.lambda = cert.lambda;
  for (const EpsEntry& e : cert.entries) {
    EpiEntry r;
    r.xstar = e.xstar;
    r.wstar = e.wstar;
    r.cstar = e.cstar;
    r.ystar = e.ystar;
    r.vstar = e.vstar;
    r.ustar = e.ustar;
    for (int i = 0; i < m; ++i) {
      r.a.push_back(Dot(e.xstar[i], xbar) + e.gamma - fbar[i]);
      r.b.push_back(Dot(e.wstar[i], xbar) + e.gamma - gbar[i]);
    }
    r.d = Dot(e.cstar, xbar) + e.gamma;
    r.s = Dot(e.ystar, base.hbar) + e.gamma;
    const double composite =
        NegVstarComposition(prob, e.vstar)(xbar).value();
    r.t = Dot(e.ustar, xbar) + e.gamma - composite;
    out.entries.push_back(std::move(r));
  }
  return out;
}

ExactTransfer EpsToExact(const FractionalProblem& prob,
                         std::span<const double> xbar,
                         const EpsCertificate& cert,
                         const BrOptions& options) {
  ValidateLambda(cert.lambda, prob.m());
  const Base base = PrepareBase(prob, xbar);
  const int m = prob.m();
  const ConvexFn indicator_c(PolyhedralFn::Indicator(prob.constraint_set()));
  std::optional<ConvexFn> indicator_minus_cone;
  if (prob.cone().has_inequalities()) {
    indicator_minus_cone =
        ConvexFn(PolyhedralFn::Indicator(prob.cone().MinusConeAsPolyhedron()));
  }

  ExactTransfer out;
  out.cert.lambda = cert.lambda;
  for (std::size_t k = 0; k < cert.entries.size(); ++k) {
    const EpsEntry& e = cert.entries[k];
    const int n = static_cast<int>(k) + 1;
    auto regularize = [&](const std::string& block, const ConvexFn& f,
                          std::span<const double> at,
                          std::span<const double> functional) {
      try {
        BrResult r = BrRegularize(f, at, e.gamma, functional, options);
        out.records.push_back({n, block, e.gamma, r.distance, r.dual_distance,
                               r.value_gap});
        return r;
      } catch (const Error& err) {
        throw Error(err.code(), "block " + block + " at n=" +
                                    std::to_string(n) + ": " + err.what());
      }
    };

    ExactEntry x;
    for (int i = 0; i < m; ++i) {
      BrResult r = regularize(Block("x*", i),
                              WeightedNumerator(prob, i, cert.lambda[i]), xbar,
                              e.xstar[i]);
      x.x.push_back(std::move(r.point));
      x.xstar.push_back(std::move(r.subgradient));
    }
    for (int i = 0; i < m; ++i) {
      BrResult r = regularize(
          Block("w*", i),
          WeightedDenominator(prob, i, cert.lambda[i], base.nu[i]), xbar,
          e.wstar[i]);
      x.w.push_back(std::move(r.point));
      x.wstar.push_back(std::move(r.subgradient));
    }
    BrResult rc = regularize("c*", indicator_c, xbar, e.cstar);
    x.c = std::move(rc.point);
    x.cstar = std::move(rc.subgradient);
    if (!indicator_minus_cone) {
      throw Error(ErrorCode::kInequalityFormRequired,
                  "exact transfer of y* needs the inequality form of Y+");
    }
    BrResult ry = regularize("y*", *indicator_minus_cone, base.hbar, e.ystar);
    x.y = std::move(ry.point);
    x.ystar = std::move(ry.subgradient);
    x.vstar = e.vstar;
    BrResult ru = regularize("u*", NegVstarComposition(prob, e.vstar), xbar,
                             e.ustar);
    x.u = std::move(ru.point);
    x.ustar = std::move(ru.subgradient);
    out.cert.entries.push_back(std::move(x));
  }
  return out;
}

const char* KktStatusName(KktResult::Status status) {
  switch (status) {
    case KktResult::Status::kHolds:
      return "Holds";
    case KktResult::Status::kInfeasible:
      return "Infeasible";
    case KktResult::Status::kUnsupported:
      return "Unsupported";
  }
  return "Unknown";
}

KktResult ClassicalKktCheck(const FractionalProblem& prob,
                            std::span<const double> xbar,
                            std::span<const double> lambda) {
  ValidateLambda(lambda, prob.m());
  const Base base = PrepareBase(prob, xbar);
  const int n_dim = prob.n();
  const int p = prob.p();
  KktResult result;

  BlockData data = [&] {
    try {
      return MakeBlockData(prob, lambda, base.nu, false);
    } catch (const Error& e) {
      result.reason = e.what();
      throw;
    }
  }();
  // Black-box constraint components keep a zero multiplier; everything else
  // must be polyhedral.
  bool forced_zero = false;
  for (int j = 0; j < p; ++j) {
    std::optional<PolyhedralFn> hj = prob.h()[j].AsPolyhedral();
    if (hj && !hj->is_affine() && !hj->has_full_domain()) {
      result.status = KktResult::Status::kUnsupported;
      result.reason = "constraint component " + std::to_string(j + 1) +
                      " needs a full domain";
      return result;
    }
    forced_zero = forced_zero || !hj;
    data.h[j] = std::move(hj);
  }

  LpBuilder lp;
  Expr total(n_dim);
  for (int i = 0; i < prob.m(); ++i) {
    const SubgradientEncoding enc =
        EncodeSubgradients(lp, data.numerators[i], xbar);
    lp.AddLessEqual(enc.gap, 0.0);
    AddExpr(total, enc.functional);
    if (data.denominators[i]) {
      const SubgradientEncoding encw =
          EncodeSubgradients(lp, *data.denominators[i], xbar);
      lp.AddLessEqual(encw.gap, 0.0);
      AddExpr(total, encw.functional);
    }
  }
  const SubgradientEncoding encc =
      EncodeSubgradients(lp, data.indicator_c, xbar);
  lp.AddLessEqual(encc.gap, 0.0);
  AddExpr(total, encc.functional);

  const Expr ys = PolarExpr(lp, prob.cone());
  LpRow complementarity;
  for (int k = 0; k < p; ++k) AddScaled(complementarity, ys[k], base.hbar[k]);
  lp.AddEqual(complementarity, 0.0);
  for (int j = 0; j < p; ++j) {
    if (!data.h[j] && !ys[j].empty()) lp.AddEqual(ys[j], 0.0);
  }
  const LpRow gap = AddCompositeBlock(lp, data, ys, xbar, total);
  lp.AddLessEqual(gap, 0.0);
  for (int k = 0; k < n_dim; ++k) lp.AddEqual(total[k], 0.0);

  const LpOutcome sol = SolveLp(lp.Build());
  if (sol.optimal()) {
    result.status = KktResult::Status::kHolds;
    result.ystar = Extract(ys, sol.solution);
    result.reason = "multiplier found";
  } else if (forced_zero) {
    result.status = KktResult::Status::kUnsupported;
    result.reason =
        "no multiplier with zero weight on non-polyhedral constraint "
        "components; the general case is not decidable by LP";
  } else {
    result.status = KktResult::Status::kInfeasible;
    result.reason = "multiplier LP is infeasible";
  }
  return result;
}

SlaterResult SlaterCheck(const FractionalProblem& prob, const GridSpec& grid,
                         double margin) {
  const PolyhedralCone& cone = prob.cone();
  if (!cone.has_inequalities()) {
    throw Error(ErrorCode::kInequalityFormRequired,
                "the interior test needs the inequality form of Y+");
  }
  CheckDim(grid.dim(), prob.n(), "grid");
  SlaterResult result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec a = grid.Point(i);
    if (!prob.constraint_set().Contains(a)) continue;
    const std::optional<Vec> ha = prob.EvaluateH(a);
    if (!ha) continue;
    ++result.samples;
    const bool interior = std::all_of(
        cone.inequalities().begin(), cone.inequalities().end(),
        [&](const Vec& row) { return Dot(row, *ha) <= -margin; });
    if (interior && !result.holds) {
      result.holds = true;
      result.witness = a;
    }
  }
  return result;
}

}  // namespace henig
