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
#include "henig/convex_kernel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "henig/error.h"

namespace henig {
namespace {

constexpr double kActiveTolerance = 1e-9;
// Weight of the residual term in the closest-subgradient LP; anything above
// 1 makes the unit cut normals strictly cheaper than the residual.
constexpr double kResidualWeight = 10.0;
constexpr int kMaxCutRounds = 200;

LpRow Terms(int first, std::span<const double> coefs) {
  LpRow row;
  for (std::size_t j = 0; j < coefs.size(); ++j) {
    if (coefs[j] != 0.0) row.push_back({first + static_cast<int>(j), coefs[j]});
  }
  return row;
}

void AppendTerm(LpRow& row, int var, double coef) {
  if (coef != 0.0) row.push_back({var, coef});
}

// Variables x (n, free) then t (free); rows t >= pieces, x in domain.
struct EpigraphLp {
  LpBuilder lp;
  int x = 0;
  int t = 0;
};

EpigraphLp BuildEpigraphLp(const PolyhedralFn& f) {
  EpigraphLp e;
  const int n = f.dim();
  e.x = e.lp.AddVariables(n);
  e.t = e.lp.AddVariable();
  for (const AffinePiece& p : f.pieces()) {
    LpRow row = Terms(e.x, p.slope);
    row.push_back({e.t, -1.0});
    e.lp.AddLessEqual(row, -p.offset);
  }
  const Polyhedron& dom = f.domain();
  for (int i = 0; i < dom.num_inequalities(); ++i) {
    e.lp.AddLessEqual(Terms(e.x, dom.ineq_lhs()[i]), dom.ineq_rhs()[i]);
  }
  for (int i = 0; i < dom.num_equalities(); ++i) {
    e.lp.AddEqual(Terms(e.x, dom.eq_lhs()[i]), dom.eq_rhs()[i]);
  }
  return e;
}

Membership Judge(ExtReal slack, double tol) {
  return Membership{slack <= ExtReal(tol), slack};
}

std::vector<Vec> SignDirections(int n) {
  std::vector<Vec> dirs;
  if (n > 12) {
    for (int i = 0; i < n; ++i) {
      for (double s : {1.0, -1.0}) {
        Vec u(n, 0.0);
        u[i] = s;
        dirs.push_back(u);
      }
    }
    return dirs;
  }
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vec u(n);
    for (int i = 0; i < n; ++i) u[i] = (mask >> i & 1u) ? -inv : inv;
    dirs.push_back(std::move(u));
  }
  return dirs;
}

// Normalized integer directions with entries in [-level, level], at most
// three nonzeros and at least one entry of magnitude 'level'.
std::vector<Vec> IntegerDirections(int n, int level) {
  std::vector<Vec> dirs;
  if (n > 6) return dirs;
  std::vector<int> v(n, -level);
  while (true) {
    int nonzero = 0;
    int top = 0;
    for (int c : v) {
      nonzero += (c != 0);
      top = std::max(top, std::abs(c));
    }
    if (nonzero > 0 && nonzero <= 3 && top == level) {
      Vec u(v.begin(), v.end());
      const double norm = Norm2(u);
      for (double& c : u) c /= norm;
      dirs.push_back(std::move(u));
    }
    int i = 0;
    while (i < n && v[i] == level) v[i++] = -level;
    if (i == n) break;
    ++v[i];
  }
  return dirs;
}

// Element of the subdifferential of f at x closest to 'target' along the
// given unit directions: minimizes sum(lambda) + W * ||e||_1 subject to
// target - x* = sum lambda_j u_j + e. Returns x* rebuilt from the
// subgradient representation.
Vec ClosestSubgradient(const PolyhedralFn& f, std::span<const double> x,
                       std::span<const double> target,
                       const std::vector<Vec>& directions) {
  const int n = f.dim();
  const std::vector<int> pieces = f.ActivePieces(x, kActiveTolerance);
  const std::vector<int> rows =
      f.domain().ActiveInequalities(x, kActiveTolerance);
  const int num_eq = f.domain().num_equalities();

  LpBuilder lp;
  const int mu = lp.AddVariables(static_cast<int>(pieces.size()), 0.0);
  const int pi = lp.AddVariables(static_cast<int>(rows.size()), 0.0);
  const int rho = lp.AddVariables(num_eq);
  const int lambda = lp.AddVariables(static_cast<int>(directions.size()), 0.0);
  const int ep = lp.AddVariables(n, 0.0);
  const int em = lp.AddVariables(n, 0.0);

  LpRow simplex;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    simplex.push_back({mu + static_cast<int>(k), 1.0});
  }
  lp.AddEqual(simplex, 1.0);

  // sum mu a + A_act^T pi + E^T rho + sum lambda u + e+ - e- = target.
  for (int j = 0; j < n; ++j) {
    LpRow row;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      AppendTerm(row, mu + static_cast<int>(k), f.pieces()[pieces[k]].slope[j]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      AppendTerm(row, pi + static_cast<int>(i),
                 f.domain().ineq_lhs()[rows[i]][j]);
    }
    for (int l = 0; l < num_eq; ++l) {
      AppendTerm(row, rho + l, f.domain().eq_lhs()[l][j]);
    }
    for (std::size_t d = 0; d < directions.size(); ++d) {
      AppendTerm(row, lambda + static_cast<int>(d), directions[d][j]);
    }
    row.push_back({ep + j, 1.0});
    row.push_back({em + j, -1.0});
    lp.AddEqual(row, target[j]);
  }
  for (std::size_t d = 0; d < directions.size(); ++d) {
    lp.AddObjective(lambda + static_cast<int>(d), -1.0);
  }
  for (int j = 0; j < n; ++j) {
    lp.AddObjective(ep + j, -kResidualWeight);
    lp.AddObjective(em + j, -kResidualWeight);
  }
  const LpOutcome out = SolveLp(lp.Build());
  if (!out.optimal()) {
    throw Error(ErrorCode::kBRSearchFailed,
                "closest-subgradient LP returned " +
                    std::string(LpStatusName(out.status)));
  }
  Vec xstar(n, 0.0);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    Axpy(out.solution[mu + k], f.pieces()[pieces[k]].slope, xstar);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Axpy(out.solution[pi + i], f.domain().ineq_lhs()[rows[i]], xstar);
  }
  for (int l = 0; l < num_eq; ++l) {
    Axpy(out.solution[rho + l], f.domain().eq_lhs()[l], xstar);
  }
  return xstar;
}

bool WithinBounds(const BrResult& r, double eps, const BrOptions& options) {
  const double root = std::sqrt(eps);
  const double rel = 1.0 + options.rounding_slack;
  constexpr double kAbs = 1e-14;
  return r.distance <= root * rel + kAbs &&
         r.dual_distance <= root * rel + kAbs &&
         r.value_gap <= 2.0 * eps * rel + kAbs;
}

}  // namespace

ExtReal Conjugate(const PolyhedralFn& f, std::span<const double> xstar) {
  CheckDim(xstar.size(), f.dim(), "conjugate argument");
  EpigraphLp e = BuildEpigraphLp(f);
  for (int j = 0; j < f.dim(); ++j) e.lp.AddObjective(e.x + j, xstar[j]);
  e.lp.AddObjective(e.t, -1.0);
  const LpOutcome out = SolveLp(e.lp.Build());
  switch (out.status) {
    case LpStatus::kOptimal:
      return out.value;
    case LpStatus::kUnbounded:
      return ExtReal::PlusInfinity();
    case LpStatus::kInfeasible:
      break;
  }
  throw Error(ErrorCode::kInternal, "conjugate LP infeasible on nonempty domain");
}

ExtReal Conjugate(const ConvexFn& f, std::span<const double> xstar) {
  CheckDim(xstar.size(), f.dim(), "conjugate argument");
  if (f.IsZeroFunction()) {
    return NormInf(xstar) == 0.0 ? ExtReal(0.0) : ExtReal::PlusInfinity();
  }
  const std::optional<PolyhedralFn> poly = f.AsPolyhedral();
  if (!poly) {
    throw Error(ErrorCode::kConjugateUnsupported,
                "conjugate needs polyhedral data; got a black-box builtin");
  }
  return Conjugate(*poly, xstar);
}

ExtReal SupportFunction(const Polyhedron& set, std::span<const double> xstar) {
  CheckDim(xstar.size(), set.dim(), "support function argument");
  if (set.is_whole_space()) {
    return NormInf(xstar) == 0.0 ? ExtReal(0.0) : ExtReal::PlusInfinity();
  }
  return Conjugate(PolyhedralFn::Indicator(set), xstar);
}

Membership EpiConjugateContains(const ConvexFn& f,
                                std::span<const double> xstar, double r,
                                double tol) {
  return Judge(Conjugate(f, xstar) - r, tol);
}

Membership EpsSubdiffContains(const ConvexFn& f, std::span<const double> xbar,
                              double eps, std::span<const double> xstar,
                              double tol) {
  CheckDim(xbar.size(), f.dim(), "base point");
  if (eps < 0.0) throw Error(ErrorCode::kInvalidInput, "eps must be >= 0");
  const ExtReal fx = f(xbar);
  if (!fx.is_finite()) {
    throw Error(ErrorCode::kPointOutsideDomain, "base point outside dom f");
  }
  const ExtReal conj = Conjugate(f, xstar);
  return Judge(conj + (fx.value() - Dot(xstar, xbar) - eps), tol);
}

Membership EpsNormalContains(const Polyhedron& set,
                             std::span<const double> xbar, double eps,
                             std::span<const double> xstar, double tol) {
  CheckDim(xbar.size(), set.dim(), "base point");
  if (eps < 0.0) throw Error(ErrorCode::kInvalidInput, "eps must be >= 0");
  if (!set.Contains(xbar)) {
    throw Error(ErrorCode::kPointOutsideDomain, "base point outside the set");
  }
  return Judge(SupportFunction(set, xstar) - (Dot(xstar, xbar) + eps), tol);
}

Vec SubdiffElement(const PolyhedralFn& f, std::span<const double> xbar) {
  if (!f(xbar).is_finite()) {
    throw Error(ErrorCode::kPointOutsideDomain, "base point outside dom f");
  }
  const std::vector<int> active = f.ActivePieces(xbar, kActiveTolerance);
  // The max piece is always within tolerance of itself.
  return f.pieces()[active.front()].slope;
}

Vec EpsSubdiffPolytope::Point(std::span<const double> mu) const {
  CheckDim(mu.size(), slopes.size(), "mu");
  Vec x(dim, 0.0);
  for (std::size_t k = 0; k < slopes.size(); ++k) Axpy(mu[k], slopes[k], x);
  return x;
}

double EpsSubdiffPolytope::Distance(std::span<const double> xstar) const {
  CheckDim(xstar.size(), dim, "x*");
  LpBuilder lp;
  const int k_count = static_cast<int>(slopes.size());
  const int mu = lp.AddVariables(k_count, 0.0);
  const int s = lp.AddVariable(0.0);
  LpRow simplex;
  LpRow gap;
  for (int k = 0; k < k_count; ++k) {
    simplex.push_back({mu + k, 1.0});
    AppendTerm(gap, mu + k, gaps[k]);
  }
  lp.AddEqual(simplex, 1.0);
  lp.AddLessEqual(gap, eps);
  for (int j = 0; j < dim; ++j) {
    LpRow row;
    for (int k = 0; k < k_count; ++k) AppendTerm(row, mu + k, slopes[k][j]);
    LpRow upper = row;
    upper.push_back({s, -1.0});
    lp.AddLessEqual(upper, xstar[j]);
    row.push_back({s, 1.0});
    lp.AddGreaterEqual(row, xstar[j]);
  }
  lp.AddObjective(s, -1.0);
  const LpOutcome out = SolveLp(lp.Build());
  if (out.status == LpStatus::kInfeasible) {
    return std::numeric_limits<double>::infinity();
  }
  if (!out.optimal()) {
    throw Error(ErrorCode::kInternal, "distance LP unbounded");
  }
  return -out.value;
}

bool EpsSubdiffPolytope::Contains(std::span<const double> xstar,
                                  double tol) const {
  return Distance(xstar) <= tol;
}

EpsSubdiffPolytope MakeEpsSubdiffPolytope(const PolyhedralFn& f,
                                          std::span<const double> xbar,
                                          double eps) {
  if (!f.has_full_domain()) {
    throw Error(ErrorCode::kUnsupportedDomain,
                "eps-subdifferential polytope needs a full-domain function");
  }
  CheckDim(xbar.size(), f.dim(), "base point");
  if (eps < 0.0) throw Error(ErrorCode::kInvalidInput, "eps must be >= 0");
  EpsSubdiffPolytope poly;
  poly.dim = f.dim();
  poly.eps = eps;
  const double fx = f.MaxPiece(xbar);
  for (const AffinePiece& p : f.pieces()) {
    poly.slopes.push_back(p.slope);
    poly.gaps.push_back(fx - Dot(p.slope, xbar) - p.offset);
  }
  return poly;
}

SubgradientEncoding EncodeSubgradients(LpBuilder& lp, const PolyhedralFn& f,
                                       std::span<const double> xbar,
                                       std::optional<int> mass_var) {
  const int n = f.dim();
  const Polyhedron& dom = f.domain();
  const int k_count = f.num_pieces();
  const int mu = lp.AddVariables(k_count, 0.0);
  const int pi = lp.AddVariables(dom.num_inequalities(), 0.0);
  const int rho = lp.AddVariables(dom.num_equalities());

  LpRow mass;
  for (int k = 0; k < k_count; ++k) mass.push_back({mu + k, 1.0});
  if (mass_var) {
    mass.push_back({*mass_var, -1.0});
    lp.AddEqual(mass, 0.0);
  } else {
    lp.AddEqual(mass, 1.0);
  }

  SubgradientEncoding enc;
  enc.functional.resize(n);
  for (int j = 0; j < n; ++j) {
    LpRow& row = enc.functional[j];
    for (int k = 0; k < k_count; ++k) {
      AppendTerm(row, mu + k, f.pieces()[k].slope[j]);
    }
    for (int i = 0; i < dom.num_inequalities(); ++i) {
      AppendTerm(row, pi + i, dom.ineq_lhs()[i][j]);
    }
    for (int l = 0; l < dom.num_equalities(); ++l) {
      AppendTerm(row, rho + l, dom.eq_lhs()[l][j]);
    }
  }
  for (int k = 0; k < k_count; ++k) {
    AppendTerm(enc.height, mu + k, -f.pieces()[k].offset);
  }
  for (int i = 0; i < dom.num_inequalities(); ++i) {
    AppendTerm(enc.height, pi + i, dom.ineq_rhs()[i]);
  }
  for (int l = 0; l < dom.num_equalities(); ++l) {
    AppendTerm(enc.height, rho + l, dom.eq_rhs()[l]);
  }

  if (!xbar.empty()) {
    CheckDim(xbar.size(), n, "base point");
    const double fx = f.MaxPiece(xbar);
    for (int k = 0; k < k_count; ++k) {
      const AffinePiece& p = f.pieces()[k];
      AppendTerm(enc.gap, mu + k,
                 std::max(0.0, fx - Dot(p.slope, xbar) - p.offset));
    }
    for (int i = 0; i < dom.num_inequalities(); ++i) {
      AppendTerm(enc.gap, pi + i,
                 std::max(0.0, dom.ineq_rhs()[i] - Dot(dom.ineq_lhs()[i], xbar)));
    }
    for (int l = 0; l < dom.num_equalities(); ++l) {
      AppendTerm(enc.gap, rho + l,
                 dom.eq_rhs()[l] - Dot(dom.eq_lhs()[l], xbar));
    }
  }
  return enc;
}

double EvaluateRow(const LpRow& row, std::span<const double> solution) {
  double total = 0.0;
  for (const LpTerm& term : row) total += term.coef * solution[term.var];
  return total;
}

BrResult BrRegularize(const ConvexFn& f, std::span<const double> xbar,
                      double eps, std::span<const double> xbarstar,
                      const BrOptions& options) {
  const int n = f.dim();
  CheckDim(xbar.size(), n, "base point");
  CheckDim(xbarstar.size(), n, "base functional");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidInput, "eps must be finite and >= 0");
  }
  const Vec base(xbar.begin(), xbar.end());

  if (f.IsZeroFunction()) {
    BrResult r{base, Vec(n, 0.0), 0.0, Norm2(xbarstar), 0.0, 0};
    if (!WithinBounds(r, eps, options)) {
      throw Error(ErrorCode::kBRSearchFailed,
                  "functional is not an eps-subgradient of the zero function");
    }
    return r;
  }
  const std::optional<PolyhedralFn> poly = f.AsPolyhedral();
  if (!poly) {
    throw Error(ErrorCode::kConjugateUnsupported,
                "regularization needs polyhedral data");
  }
  const ExtReal fbar_ext = (*poly)(xbar);
  if (!fbar_ext.is_finite()) {
    throw Error(ErrorCode::kPointOutsideDomain, "base point outside dom f");
  }
  const double fbar = fbar_ext.value();

  auto finish = [&](Vec x, Vec xstar, int level) -> std::optional<BrResult> {
    const ExtReal fx = (*poly)(x);
    if (!fx.is_finite()) return std::nullopt;
    BrResult r;
    r.distance = Distance2(x, xbar);
    r.dual_distance = Distance2(xstar, xbarstar);
    r.value_gap =
        std::fabs(fx.value() - fbar - Dot(xstar, Subtract(x, xbar)));
    r.point = std::move(x);
    r.subgradient = std::move(xstar);
    r.refinements = level;
    if (!WithinBounds(r, eps, options)) return std::nullopt;
    return r;
  };

  if (eps == 0.0) {
    if (!EpsSubdiffContains(*poly, xbar, 0.0, xbarstar)) {
      throw Error(ErrorCode::kBRSearchFailed, "not an exact subgradient");
    }
    return BrResult{base, Vec(xbarstar.begin(), xbarstar.end()), 0.0, 0.0,
                    0.0, 0};
  }

  // Cheapest candidate: stay at xbar with the nearest exact subgradient.
  if (auto r = finish(base, ClosestSubgradient(*poly, xbar, xbarstar, {}), 0)) {
    return *r;
  }

  // Minimize f(y) - <xbar*, y> over an outer polyhedral approximation of the
  // ball of radius sqrt(eps) around xbar, tightened by tangent cuts at the
  // current minimizer until it lies in the true ball.
  const double radius = std::sqrt(eps);
  std::vector<Vec> cuts = SignDirections(n);
  double shrink = 1e-6;
  for (int level = 0; level <= options.max_refinements; ++level) {
    if (level > 0) {
      for (Vec& u : IntegerDirections(n, std::min(level + 1, 3))) {
        cuts.push_back(std::move(u));
      }
      shrink *= 1e-2;
    }
    const double cut_radius = radius * (1.0 - shrink);
    Vec y;
    bool inside = false;
    for (int round = 0; round < kMaxCutRounds; ++round) {
      EpigraphLp e = BuildEpigraphLp(*poly);
      for (int j = 0; j < n; ++j) e.lp.AddObjective(e.x + j, xbarstar[j]);
      e.lp.AddObjective(e.t, -1.0);
      for (const Vec& u : cuts) {
        e.lp.AddLessEqual(Terms(e.x, u), cut_radius + Dot(u, xbar));
      }
      const LpOutcome out = SolveLp(e.lp.Build());
      if (!out.optimal()) {
        throw Error(ErrorCode::kBRSearchFailed,
                    "ball-restricted LP returned " +
                        std::string(LpStatusName(out.status)));
      }
      y.assign(out.solution.begin() + e.x, out.solution.begin() + e.x + n);
      const Vec z = Subtract(y, xbar);
      const double nz = Norm2(z);
      if (nz <= radius) {
        inside = true;
        break;
      }
      cuts.push_back(Scale(1.0 / nz, z));
    }
    if (!inside) continue;

    const Vec z = Subtract(y, xbar);
    std::vector<Vec> active;
    for (const Vec& u : cuts) {
      if (std::fabs(Dot(u, z) - cut_radius) <= kActiveTolerance * radius) {
        active.push_back(u);
      }
    }
    Vec xstar = ClosestSubgradient(*poly, y, xbarstar, active);
    if (auto r = finish(std::move(y), std::move(xstar), level)) return *r;
  }
  throw Error(ErrorCode::kBRSearchFailed,
              "no pair satisfying the regularization bounds after " +
                  std::to_string(options.max_refinements) + " refinements");
}

double BruteConjugate(const ConvexFn& f, std::span<const double> xstar,
                      const GridSpec& grid) {
  CheckDim(xstar.size(), f.dim(), "conjugate argument");
  CheckDim(grid.dim(), f.dim(), "grid");
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec x = grid.Point(i);
    const ExtReal fx = f(x);
    if (!fx.is_finite()) continue;
    any = true;
    best = std::max(best, Dot(xstar, x) - fx.value());
  }
  if (!any) {
    throw Error(ErrorCode::kInvalidInput, "f is +inf on every grid point");
  }
  return best;
}

}  // namespace henig
