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
#include "henig/fractional.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>
#include <utility>

#include "henig/error.h"

namespace henig {
namespace {

// Ratio-difference vectors this close to 0 are not counterexamples.
constexpr double kZeroDifference = 1e-9;

using DiffFn = std::function<std::optional<Vec>(std::span<const double>)>;

struct Sample {
  Vec x;
  Vec diff;
};

std::string FormatPoint(std::span<const double> x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out << ", ";
    out << x[i];
  }
  out << ')';
  return out.str();
}

// Feasible grid samples with a defined difference vector, in lexicographic
// order. Chunks are evaluated in parallel and concatenated in order.
std::vector<Sample> CollectSamples(const FractionalProblem& prob,
                                   const GridSpec& grid, const DiffFn& diff,
                                   int threads) {
  const std::size_t total = grid.size();
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(total, 1));
  std::vector<std::vector<Sample>> chunks(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      const std::size_t lo = total * w / workers;
      const std::size_t hi = total * (w + 1) / workers;
      for (std::size_t i = lo; i < hi; ++i) {
        Vec x = grid.Point(i);
        if (!Feasible(prob, x)) continue;
        std::optional<Vec> d = diff(x);
        if (!d) continue;
        chunks[w].push_back({std::move(x), std::move(*d)});
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Sample> samples;
  for (auto& chunk : chunks) {
    for (Sample& s : chunk) samples.push_back(std::move(s));
  }
  return samples;
}

bool IsCounterexample(const HenigCone& cone, std::span<const double> d) {
  return NormInf(d) > kZeroDifference && cone.InMinusPolar(d);
}

std::vector<double> NormalizeLadder(std::vector<double> ladder) {
  if (ladder.empty()) throw Error(ErrorCode::kInvalidInput, "empty eps ladder");
  for (double eps : ladder) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw Error(ErrorCode::kInvalidInput, "ladder entries must be > 0");
    }
  }
  std::sort(ladder.begin(), ladder.end(), std::greater<>());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  return ladder;
}

EfficiencyVerdict Scan(const FractionalProblem& prob,
                       std::span<const double> xbar, std::vector<double> ladder,
                       const GridSpec& grid, const DiffFn& diff,
                       const ScanOptions& options) {
  CheckDim(xbar.size(), prob.n(), "candidate point");
  CheckDim(grid.dim(), prob.n(), "grid");
  if (!Feasible(prob, xbar)) {
    throw Error(ErrorCode::kInvalidInput,
                "candidate point " + FormatPoint(xbar) + " is infeasible");
  }
  ladder = NormalizeLadder(std::move(ladder));

  EfficiencyVerdict verdict;
  verdict.grid = grid.ToString();
  const std::vector<Sample> samples =
      CollectSamples(prob, grid, diff, options.threads);
  verdict.feasible_samples = samples.size();
  if (samples.empty()) {
    verdict.kind = EfficiencyVerdict::Kind::kInconclusive;
    verdict.reason = "no feasible samples";
    return verdict;
  }

  for (double eps : ladder) {
    const HenigCone cone(prob.m(), eps);
    LadderStep step{eps, false, {}};
    for (const Sample& s : samples) {
      if (IsCounterexample(cone, s.diff)) {
        step.refuted = true;
        step.counterexample = s.x;
        break;
      }
    }
    verdict.scan.push_back(std::move(step));
  }

  for (const LadderStep& step : verdict.scan) {
    if (!step.refuted) {
      verdict.kind = EfficiencyVerdict::Kind::kProperlyEfficient;
      verdict.eps = step.eps;
      verdict.reason = "no counterexample on the grid";
      return verdict;
    }
  }

  // Refuted at every eps. The counterexample sets grow with eps, so the
  // witness found at the smallest eps should work for the whole ladder.
  const LadderStep& finest = verdict.scan.back();
  const Vec& witness = finest.counterexample;
  const std::optional<Vec> d = diff(witness);
  bool universal = d.has_value() && Feasible(prob, witness);
  for (double eps : ladder) {
    universal = universal && IsCounterexample(HenigCone(prob.m(), eps), *d);
  }
  verdict.eps = finest.eps;
  verdict.counterexample = witness;
  if (universal) {
    verdict.kind = EfficiencyVerdict::Kind::kDominated;
    verdict.reason = "counterexample valid at every ladder eps";
  } else {
    verdict.kind = EfficiencyVerdict::Kind::kInconclusive;
    verdict.reason = "refuted at every eps but no single witness";
  }
  return verdict;
}

}  // namespace

FractionalProblem::FractionalProblem(int n, std::vector<Objective> objectives,
                                     std::vector<ConvexFn> h,
                                     PolyhedralCone cone,
                                     Polyhedron constraint_set)
    : n_(n),
      objectives_(std::move(objectives)),
      h_(std::move(h)),
      cone_(std::move(cone)),
      constraint_set_(std::move(constraint_set)) {
  if (n_ < 1) throw Error(ErrorCode::kInvalidInput, "problem dimension < 1");
  if (objectives_.size() < 2) {
    throw Error(ErrorCode::kInvalidInput, "need at least two objectives");
  }
  if (h_.empty()) {
    throw Error(ErrorCode::kInvalidInput, "need at least one constraint map");
  }
  for (const Objective& o : objectives_) {
    CheckDim(o.f.dim(), n_, "objective numerator");
    CheckDim(o.neg_g.dim(), n_, "objective denominator");
  }
  for (const ConvexFn& hj : h_) CheckDim(hj.dim(), n_, "constraint map");
  CheckDim(cone_.dim(), h_.size(), "ordering cone");
  CheckDim(constraint_set_.dim(), n_, "constraint set");
}

std::optional<Vec> FractionalProblem::EvaluateH(
    std::span<const double> x) const {
  Vec y;
  y.reserve(h_.size());
  for (const ConvexFn& hj : h_) {
    const ExtReal v = hj(x);
    if (!v.is_finite()) return std::nullopt;
    y.push_back(v.value());
  }
  return y;
}

double FractionalProblem::Numerator(int i, std::span<const double> x) const {
  return objectives_[i].f(x).ToDouble();
}

double FractionalProblem::Denominator(int i, std::span<const double> x) const {
  return -objectives_[i].neg_g(x).ToDouble();
}

bool Feasible(const FractionalProblem& prob, std::span<const double> x,
              double tol) {
  CheckDim(x.size(), prob.n(), "point");
  if (!prob.constraint_set().Contains(x, tol)) return false;
  const std::optional<Vec> y = prob.EvaluateH(x);
  return y.has_value() && prob.cone().InMinusCone(*y, tol);
}

std::vector<Vec> FeasibleGridPoints(const FractionalProblem& prob,
                                    const GridSpec& grid) {
  CheckDim(grid.dim(), prob.n(), "grid");
  std::vector<Vec> points;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Vec x = grid.Point(i);
    if (Feasible(prob, x)) points.push_back(std::move(x));
  }
  return points;
}

std::vector<std::string> StandingAssumptionWarnings(
    const FractionalProblem& prob, const GridSpec& grid, int limit) {
  std::vector<std::string> notes;
  for (const Vec& x : FeasibleGridPoints(prob, grid)) {
    for (int i = 0; i < prob.m(); ++i) {
      const double f = prob.Numerator(i, x);
      const double g = prob.Denominator(i, x);
      if (f < 0.0 || !(g > 0.0)) {
        std::ostringstream out;
        out << "objective " << i + 1 << ": f = " << f << ", g = " << g
            << " at " << FormatPoint(x);
        notes.push_back(out.str());
        if (static_cast<int>(notes.size()) >= limit) return notes;
      }
    }
  }
  return notes;
}

Vec NuValues(const FractionalProblem& prob, std::span<const double> xbar) {
  CheckDim(xbar.size(), prob.n(), "candidate point");
  Vec nu(prob.m());
  for (int i = 0; i < prob.m(); ++i) {
    const double f = prob.Numerator(i, xbar);
    const double g = prob.Denominator(i, xbar);
    if (!std::isfinite(f) || !std::isfinite(g)) {
      throw Error(ErrorCode::kPointOutsideDomain,
                  "objective " + std::to_string(i + 1) +
                      " is not finite at the candidate point");
    }
    if (std::fabs(g) < kDenominatorTolerance) {
      throw Error(ErrorCode::kDenominatorNearZero,
                  "denominator " + std::to_string(i + 1) + " vanishes");
    }
    nu[i] = f / g;
  }
  return nu;
}

ConvexFn ScaleTerm(double c, const ConvexFn& fn) {
  if (c >= 0.0) return ConvexFn::Scaled(c, fn);
  const std::optional<PolyhedralFn> poly = fn.AsPolyhedral();
  if (!poly || !poly->is_affine()) {
    throw Error(ErrorCode::kUnsupportedData,
                "negative multiple of a non-affine denominator is not convex");
  }
  return ConvexFn(poly->ScaledBy(c));
}

Vec ParametricProblem::Phi(std::span<const double> x) const {
  Vec phi(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const ExtReal v = base->objectives()[i].f(x) + scaled_neg_g[i](x);
    phi[i] = v.ToDouble();
  }
  return phi;
}

ParametricProblem MakeParametricProblem(const FractionalProblem& prob,
                                        std::span<const double> xbar) {
  ParametricProblem pp;
  pp.base = &prob;
  pp.xbar.assign(xbar.begin(), xbar.end());
  pp.nu = NuValues(prob, xbar);
  for (int i = 0; i < prob.m(); ++i) {
    pp.scaled_neg_g.push_back(ScaleTerm(pp.nu[i], prob.objectives()[i].neg_g));
  }
  const Vec phi = pp.Phi(xbar);
  for (int i = 0; i < prob.m(); ++i) {
    const double scale = 1.0 + std::fabs(prob.Numerator(i, xbar));
    if (!(std::fabs(phi[i]) <= 1e-9 * scale)) {
      throw Error(ErrorCode::kInternal,
                  "parametric objective does not vanish at the candidate");
    }
  }
  return pp;
}

std::vector<double> DefaultEpsLadder() {
  std::vector<double> ladder;
  for (int k = 0; k <= 20; ++k) ladder.push_back(std::ldexp(1.0, -k));
  return ladder;
}

const char* VerdictName(EfficiencyVerdict::Kind kind) {
  switch (kind) {
    case EfficiencyVerdict::Kind::kProperlyEfficient:
      return "ProperlyEfficient";
    case EfficiencyVerdict::Kind::kDominated:
      return "Dominated";
    case EfficiencyVerdict::Kind::kInconclusive:
      return "Inconclusive";
  }
  return "Unknown";
}

EfficiencyVerdict HenigCheckBruteforce(const FractionalProblem& prob,
                                       std::span<const double> xbar,
                                       std::vector<double> ladder,
                                       const GridSpec& grid,
                                       const ScanOptions& options) {
  CheckDim(xbar.size(), prob.n(), "candidate point");
  const Vec nu = NuValues(prob, xbar);
  DiffFn diff = [&prob, nu](std::span<const double> x) -> std::optional<Vec> {
    Vec d(prob.m());
    for (int i = 0; i < prob.m(); ++i) {
      const double f = prob.Numerator(i, x);
      const double g = prob.Denominator(i, x);
      if (!std::isfinite(f) || !std::isfinite(g) ||
          std::fabs(g) < kDenominatorTolerance) {
        return std::nullopt;
      }
      d[i] = f / g - nu[i];
    }
    return d;
  };
  return Scan(prob, xbar, std::move(ladder), grid, diff, options);
}

EfficiencyVerdict ParametricCheckBruteforce(const FractionalProblem& prob,
                                            std::span<const double> xbar,
                                            std::vector<double> ladder,
                                            const GridSpec& grid,
                                            const ScanOptions& options) {
  CheckDim(xbar.size(), prob.n(), "candidate point");
  const ParametricProblem pp = MakeParametricProblem(prob, xbar);
  DiffFn diff = [&pp](std::span<const double> x) -> std::optional<Vec> {
    Vec d = pp.Phi(x);
    for (double v : d) {
      if (!std::isfinite(v)) return std::nullopt;
    }
    return d;
  };
  return Scan(prob, xbar, std::move(ladder), grid, diff, options);
}

EquivalenceResult ParametricEquivalenceCheck(const FractionalProblem& prob,
                                             std::span<const double> xbar,
                                             const std::vector<double>& ladder,
                                             const GridSpec& grid,
                                             const ScanOptions& options) {
  EquivalenceResult r;
  r.original = HenigCheckBruteforce(prob, xbar, ladder, grid, options);
  r.parametric = ParametricCheckBruteforce(prob, xbar, ladder, grid, options);
  r.agree = r.original.kind == r.parametric.kind;
  return r;
}

}  // namespace henig
