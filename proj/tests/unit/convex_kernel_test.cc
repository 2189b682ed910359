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

#include <cmath>

#include <gtest/gtest.h>

#include "henig/error.h"
#include "test_instances.h"

namespace henig {
namespace {

PolyhedralFn Abs() { return PolyhedralFn({{{1.0}, 0.0}, {{-1.0}, 0.0}}); }

Polyhedron QuadrantStrip() {
  // R_+ x [0, 1]
  return Polyhedron::Box({ExtReal(0.0), ExtReal(0.0)},
                         {ExtReal::PlusInfinity(), ExtReal(1.0)});
}

// sup of x* x - |x| over an evenly spaced grid on [-r, r].
double GridSupAbs(double xstar, double r, int count) {
  double best = -1e300;
  for (int k = 0; k < count; ++k) {
    const double x = -r + 2.0 * r * k / (count - 1);
    best = std::max(best, xstar * x - std::fabs(x));
  }
  return best;
}

TEST(ConjugateTest, AbsAtUnitSlopeIsZero) {
  EXPECT_NEAR(Conjugate(Abs(), Vec{1.0}).value(), 0.0, kLpObjectiveTolerance);
}

TEST(ConjugateTest, AbsOutsideUnitBallIsInfinite) {
  EXPECT_TRUE(Conjugate(Abs(), Vec{2.0}).is_plus_infinity());
  // Oracle: the grid supremum grows linearly with the grid radius.
  EXPECT_NEAR(GridSupAbs(2.0, 1e2, 2001), 1e2, 1e-9);
  EXPECT_NEAR(GridSupAbs(2.0, 1e4, 2001), 1e4, 1e-9);
}

TEST(ConjugateTest, ZeroScaledFunctionIsIndicatorOfOrigin) {
  const ConvexFn z =
      ConvexFn::Scaled(0.0, BlackBoxFn::Make(BuiltinKind::kEuclMinusLast, 2));
  EXPECT_EQ(Conjugate(z, Vec{0.0, 0.0}).value(), 0.0);
  EXPECT_TRUE(Conjugate(z, Vec{0.0, 1e-3}).is_plus_infinity());
}

TEST(ConjugateTest, BlackBoxUnsupported) {
  try {
    Conjugate(ConvexFn(BlackBoxFn::Make(BuiltinKind::kReluSq, 1)), Vec{0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConjugateUnsupported);
  }
}

TEST(SupportFunctionTest, StripExamples) {
  EXPECT_NEAR(SupportFunction(QuadrantStrip(), Vec{0.0, 0.2}).value(), 0.2,
              kLpObjectiveTolerance);
  EXPECT_TRUE(SupportFunction(QuadrantStrip(), Vec{1.0, 0.0}).is_plus_infinity());
  // Oracle: brute-force max over the 201x201 grid of [0,10]x[0,1].
  const GridSpec grid = GridSpec::Parse("201x201:[0,10]x[0,1]");
  double best = -1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    best = std::max(best, -grid.Point(i)[0]);
  }
  EXPECT_EQ(best, 0.0);
  EXPECT_NEAR(SupportFunction(QuadrantStrip(), Vec{-1.0, 0.0}).value(), best,
              kLpObjectiveTolerance);
}

TEST(EpiConjugateTest, LinearObjective) {
  const ConvexFn f = PolyhedralFn::Affine({2.0, 0.0}, 0.0);
  EXPECT_TRUE(EpiConjugateContains(f, Vec{2.0, 0.0}, 1.0 / 7.0).holds);
  EXPECT_FALSE(EpiConjugateContains(f, Vec{2.0, 0.0}, -0.1).holds);
  const Membership off = EpiConjugateContains(f, Vec{1.0, 0.0}, 5.0);
  EXPECT_FALSE(off.holds);
  EXPECT_TRUE(off.slack.is_plus_infinity());
  // Oracle: sup over x in [-1e4, 1e4] of x - 2x diverges like 1e4.
  double sup = -1e300;
  for (int k = 0; k <= 2000; ++k) {
    const double x = -1e4 + 10.0 * k;
    sup = std::max(sup, x - 2.0 * x);
  }
  EXPECT_EQ(sup, 1e4);
}

TEST(EpsSubdiffTest, AbsAtOne) {
  // Oracle: the defining inequality on 1e5 grid points of [-100, 100].
  const GridSpec grid = GridSpec::Uniform(1, -100.0, 100.0, 100001);
  const PolyhedralFn f = Abs();
  EXPECT_TRUE(EpsSubdiffContains(f, Vec{1.0}, 0.5, Vec{0.6}).holds);
  EXPECT_LE(testing::MaxDefiningViolation(f, {1.0}, 0.5, {0.6}, grid), 1e-12);
  EXPECT_FALSE(EpsSubdiffContains(f, Vec{1.0}, 0.5, Vec{0.4}).holds);
  EXPECT_GT(testing::MaxDefiningViolation(f, {1.0}, 0.5, {0.4}, grid), 0.05);
  EXPECT_TRUE(EpsSubdiffContains(f, Vec{0.0}, 0.0, Vec{1.0}).holds);
}

TEST(EpsSubdiffTest, OutsideDomainThrows) {
  const PolyhedralFn f({{{1.0}, 0.0}}, Polyhedron::Box({ExtReal(0.0)},
                                                      {ExtReal(1.0)}));
  try {
    EpsSubdiffContains(f, Vec{2.0}, 0.1, Vec{1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPointOutsideDomain);
  }
}

TEST(EpsNormalTest, StripExamples) {
  const Vec xbar{0.0, 0.5};
  const Membership m =
      EpsNormalContains(QuadrantStrip(), xbar, 1.0 / 3.0, Vec{0.0, 1.0 / 3.0});
  EXPECT_TRUE(m.holds);
  EXPECT_NEAR(m.slack.value(), 1.0 / 6.0 - 1.0 / 3.0, 1e-12);
  EXPECT_TRUE(EpsNormalContains(QuadrantStrip(), xbar, 0.0, Vec{0.0, 0.0}).holds);
  EXPECT_FALSE(EpsNormalContains(QuadrantStrip(), xbar, 0.0, Vec{1.0, 0.0}).holds);
  // Oracle: x = (10, 0) gives <x*, x - xbar> = 10 > 0.
  EXPECT_EQ(Dot(Vec{1.0, 0.0}, Subtract(Vec{10.0, 0.0}, xbar)), 10.0);
}

TEST(SubdiffElementTest, LowestActivePiece) {
  EXPECT_EQ(SubdiffElement(Abs(), Vec{2.0}), (Vec{1.0}));
  EXPECT_EQ(SubdiffElement(Abs(), Vec{0.0}), (Vec{1.0}));
  const PolyhedralFn relu({{{0.0}, 0.0}, {{1.0}, 0.0}},
                          Polyhedron::Box({ExtReal(-5.0)}, {ExtReal(5.0)}));
  const Vec g = SubdiffElement(relu, Vec{-5.0});
  EXPECT_TRUE(EpsSubdiffContains(relu, Vec{-5.0}, 0.0, g).holds);
  const GridSpec grid = GridSpec::Uniform(1, -5.0, 5.0, 1001);
  EXPECT_LE(testing::MaxDefiningViolation(relu, {-5.0}, 0.0, g, grid), 1e-12);
}

TEST(EpsSubdiffPolytopeTest, AbsProjections) {
  const GridSpec xs = GridSpec::Uniform(1, -2.0, 2.0, 81);
  const GridSpec oracle = GridSpec::Uniform(1, -50.0, 50.0, 10001);
  for (double eps : {0.0, 0.5}) {
    const EpsSubdiffPolytope p = MakeEpsSubdiffPolytope(Abs(), Vec{1.0}, eps);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Vec s = xs.Point(i);
      const bool analytic = s[0] >= 1.0 - eps - 1e-12 && s[0] <= 1.0 + 1e-12;
      EXPECT_EQ(p.Contains(s), analytic) << "eps=" << eps << " x*=" << s[0];
      EXPECT_EQ(testing::MaxDefiningViolation(Abs(), {1.0}, eps, s, oracle) <= 1e-9,
                analytic);
    }
  }
}

TEST(EpsSubdiffPolytopeTest, AffineIsSingleton) {
  const EpsSubdiffPolytope p =
      MakeEpsSubdiffPolytope(PolyhedralFn::Affine({1.0, -2.0}, 3.0), Vec{4.0, 4.0}, 0.0);
  EXPECT_TRUE(p.Contains(Vec{1.0, -2.0}));
  EXPECT_FALSE(p.Contains(Vec{1.0, -1.9}));
  EXPECT_NEAR(p.Distance(Vec{1.0, -1.5}), 0.5, 1e-9);
}

TEST(EpsSubdiffPolytopeTest, RestrictedDomainRejected) {
  try {
    MakeEpsSubdiffPolytope(PolyhedralFn::Indicator(QuadrantStrip()),
                           Vec{0.0, 0.5}, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDomain);
  }
}

void ExpectBrBounds(const ConvexFn& f, const Vec& xbar, double eps,
                    const Vec& xbarstar, const BrResult& r) {
  const double root = std::sqrt(eps);
  EXPECT_LE(Norm2(Subtract(r.point, xbar)), root * (1 + 1e-12) + 1e-14);
  EXPECT_LE(Norm2(Subtract(r.subgradient, xbarstar)), root * (1 + 1e-12) + 1e-14);
  const double gap = f(r.point).value() - f(xbar).value() -
                     Dot(r.subgradient, Subtract(r.point, xbar));
  EXPECT_LE(std::fabs(gap), 2 * eps * (1 + 1e-12) + 1e-14);
  EXPECT_TRUE(EpsSubdiffContains(f, r.point, 0.0, r.subgradient).holds);
}

TEST(BrRegularizeTest, ReluLeftOfKink) {
  const ConvexFn f = PolyhedralFn({{{0.0}, 0.0}, {{1.0}, 0.0}});
  const BrResult r = BrRegularize(f, Vec{-1.0}, 0.04, Vec{0.04});
  ExpectBrBounds(f, {-1.0}, 0.04, {0.04}, r);
  // (x, x*) = (-1, 0) is a valid answer: bounds 0 <= 0.2, 0.04 <= 0.2, 0 <= 0.08.
  EXPECT_TRUE(EpsSubdiffContains(f, Vec{-1.0}, 0.0, Vec{0.0}).holds);
}

TEST(BrRegularizeTest, ExactSubgradientStaysPut) {
  const BrResult r = BrRegularize(Abs(), Vec{0.0}, 0.01, Vec{1.0});
  EXPECT_EQ(r.point, (Vec{0.0}));
  EXPECT_EQ(r.subgradient, (Vec{1.0}));
  EXPECT_EQ(r.distance, 0.0);
  EXPECT_EQ(r.dual_distance, 0.0);
  ExpectBrBounds(Abs(), {0.0}, 0.01, {1.0}, r);
}

TEST(BrRegularizeTest, ZeroFunctionShortCircuit) {
  const ConvexFn z =
      ConvexFn::Scaled(0.0, BlackBoxFn::Make(BuiltinKind::kReluSq, 2));
  const BrResult r = BrRegularize(z, Vec{0.0, 0.5}, 0.1, Vec{0.0, 0.0});
  EXPECT_EQ(r.point, (Vec{0.0, 0.5}));
  EXPECT_EQ(r.subgradient, (Vec{0.0, 0.0}));
}

TEST(BrRegularizeTest, MovesWhenNoNearbyExactSubgradient) {
  // 0.5 is a 0.5-subgradient of |.| at 1 but the only exact one is 1, at
  // distance 0.5 <= sqrt(0.5); both answers must satisfy the bounds.
  const BrResult r = BrRegularize(Abs(), Vec{1.0}, 0.5, Vec{0.5});
  ExpectBrBounds(Abs(), {1.0}, 0.5, {0.5}, r);
  // Here staying is impossible within the dual bound for a smaller eps.
  const BrResult s = BrRegularize(Abs(), Vec{0.1}, 0.1, Vec{0.05});
  ExpectBrBounds(Abs(), {0.1}, 0.1, {0.05}, s);
}

TEST(BrRegularizeTest, IndicatorBlock) {
  const ConvexFn c = PolyhedralFn::Indicator(QuadrantStrip());
  const BrResult r = BrRegularize(c, Vec{0.0, 0.5}, 0.25, Vec{0.0, 0.25});
  ExpectBrBounds(c, {0.0, 0.5}, 0.25, {0.0, 0.25}, r);
}

TEST(BrRegularizeTest, RejectsNonMember) {
  EXPECT_THROW(BrRegularize(Abs(), Vec{1.0}, 0.1, Vec{0.0}), Error);
}

TEST(BruteConjugateTest, Examples) {
  const GridSpec g = GridSpec::Uniform(1, -10.0, 10.0, 2001);
  EXPECT_NEAR(BruteConjugate(Abs(), Vec{0.5}, g), 0.0, g.MaxStep());
  EXPECT_NEAR(BruteConjugate(Abs(), Vec{1.0}, g), 0.0, 1e-12);
  const ConvexFn ind = PolyhedralFn::Indicator(
      Polyhedron::Box({ExtReal(0.0)}, {ExtReal(1.0)}));
  EXPECT_NEAR(BruteConjugate(ind, Vec{3.0}, GridSpec::Uniform(1, 0.0, 1.0, 11)),
              3.0, 1e-12);
  EXPECT_THROW(BruteConjugate(ind, Vec{3.0}, GridSpec::Uniform(1, 2.0, 3.0, 11)),
               Error);
}

}  // namespace
}  // namespace henig
