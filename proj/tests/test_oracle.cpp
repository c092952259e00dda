#include <gtest/gtest.h>

#include <cmath>

#include "xxring/oracle.hpp"
#include "xxring/sweep.hpp"

namespace xxring {
namespace {

// Frozen from tests/oracle/derive_values.py.
constexpr double kNumpyC12J1B1Tau05 = 0.21066392720165064;
constexpr double kNumpyC13J1B1Tau05Ferro = 0.2727593038947924;
constexpr double kNumpyTauStar = 1.271363553539402;
constexpr double kNumpyTauStarJ1B10 = 1.079035883485151;

TEST(NumericConcurrence, MatchesClosedFormAtSamplePoint) {
  const double num = numeric_concurrence({1.0, 1.0, 3}, {0.5}, Pair::P12);
  EXPECT_NEAR(num, concurrence_pair({1.0, 1.0, 3}, {0.5}, Pair::P12), 1e-9);
  EXPECT_NEAR(num, kNumpyC12J1B1Tau05, 1e-12);
}

TEST(NumericConcurrence, InfiniteTemperatureSeparable) {
  for (Pair p : {Pair::P12, Pair::P13, Pair::P23}) EXPECT_NEAR(numeric_concurrence({1.0, 2.0, 3}, {1e6}, p), 0.0, 1e-12);
}

TEST(NumericConcurrence, AntiferromagneticSingletLimit) {
  EXPECT_NEAR(numeric_concurrence({1.0, 1.0, 3}, {0.01}, Pair::P12), 1.0, 1e-9);
}

TEST(NumericConcurrence, Pair23ByPartialTraceEqualsPair13) {
  for (double j : {1.0, -1.0})
    for (double b : {0.0, 0.5, 1.0, 5.0})
      for (double tau : {0.1, 0.5, 2.0}) {
        const ModelParams p{j, b, 3};
        EXPECT_NEAR(numeric_concurrence(p, {tau}, Pair::P23), concurrence_pair(p, {tau}, Pair::P13), 1e-10);
      }
  EXPECT_NEAR(numeric_concurrence({-1.0, 1.0, 3}, {0.5}, Pair::P23), kNumpyC13J1B1Tau05Ferro, 1e-12);
}

TEST(NumericConcurrence, LambdasMatchXStateFormula) {
  // {sqrt(w1 w2) +- |y|, sqrt(uv), sqrt(uv)} for the reduced states on a grid.
  for (double j : {1.0, -1.0})
    for (double b : {0.0, 0.5, 2.0, 10.0})
      for (double tau : {0.1, 0.5, 3.0})
        for (Pair pair : {Pair::P12, Pair::P13}) {
          const ComplexMatrix r = numeric_reduced_state({j, b, 3}, {tau}, pair);
          const XElements e = x_elements_of(r);
          std::array<double, 4> expected{std::sqrt(e.w1 * e.w2) + std::abs(e.y), std::sqrt(e.w1 * e.w2) - std::abs(e.y),
                                         std::sqrt(e.u * e.v), std::sqrt(e.u * e.v)};
          std::sort(expected.rbegin(), expected.rend());
          const auto got = wootters_lambdas(r);
          for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expected[i], 1e-10);
        }
}

TEST(CrossCheck, DefaultGridPasses) {
  const Grid grid = default_grid();
  ASSERT_EQ(grid.size(), 196u);
  const CrossCheckReport report = cross_check(grid);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.points.size(), 196u);
  EXPECT_LT(report.concurrence.value, 1e-9);
  EXPECT_LT(report.spectrum.value, 1e-10);
}

TEST(CrossCheck, CoversEveryPointOnceInGridOrder) {
  Grid grid{{0.3, 1.0}, {0.0, 2.0}, {1.0, -1.0}, {Pair::P12, Pair::P13}};
  const auto report = run_cross_check(grid);
  const auto pts = expand(grid);
  ASSERT_EQ(report.points.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(report.points[i].point.tau, pts[i].tau);
    EXPECT_EQ(report.points[i].point.b, pts[i].b);
    EXPECT_EQ(report.points[i].point.j, pts[i].j);
    EXPECT_EQ(report.points[i].point.pair, pts[i].pair);
  }
}

TEST(CrossCheck, DegenerateZeroFieldPointsPass) {
  Grid grid{{0.05, 0.5, 1.0, 3.0}, {0.0}, {1.0, -1.0}, {Pair::P12, Pair::P13}};
  EXPECT_NO_THROW(cross_check(grid));
}

TEST(CrossCheck, ParallelReportIsIdentical) {
  const Grid grid = default_grid();
  const auto a = run_cross_check(grid, closed_form_eigensystem, 1);
  const auto b = run_cross_check(grid, closed_form_eigensystem, 4);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].concurrence, b.points[i].concurrence);
    EXPECT_EQ(a.points[i].elements, b.points[i].elements);
  }
}

TEST(CrossCheck, DetectsCorruptedClosedForm) {
  auto corrupted = [](const ModelParams& p) {
    EigenSystem sys = closed_form_eigensystem(p);
    sys.energies[4] += 1e-3;
    return sys;
  };
  try {
    cross_check(default_grid(), corrupted);
    FAIL() << "expected ToleranceExceeded";
  } catch (const CrossCheckFailure& e) {
    EXPECT_EQ(e.code(), ErrorCode::ToleranceExceeded);
    EXPECT_FALSE(e.report().passed());
    EXPECT_GT(e.report().spectrum.value, 1e-4);
  }
}

TEST(CrossCheck, DetectsCorruptedAmplitude) {
  auto corrupted = [](const ModelParams& p) {
    EigenSystem sys = closed_form_eigensystem(p);
    sys.a[5] *= 1.0 + 1e-6;
    return sys;
  };
  const auto report = run_cross_check(default_grid(), corrupted);
  EXPECT_FALSE(report.passed());
  EXPECT_GT(report.elements.value, 1e-10);
}

TEST(ThresholdScan, ZeroFieldEntangledSign) {
  const double tau_star = threshold_scan({-1.0, 0.0, 3}, Pair::P12, {0.05, 3.0});
  EXPECT_NEAR(tau_star, kNumpyTauStar, 1e-6);
  EXPECT_NEAR(tau_star, b0_threshold_tau(), 1e-6);
  EXPECT_NEAR(tau_star, 1.2707, 0.002);
}

TEST(ThresholdScan, BracketIsValid) {
  const ModelParams p{-1.0, 0.0, 3};
  const double tau_star = threshold_scan(p, Pair::P12, {0.05, 3.0});
  EXPECT_GT(entanglement_margin(p, {tau_star - 1e-6}, Pair::P12), 0.0);
  EXPECT_LE(entanglement_margin(p, {tau_star + 1e-6}, Pair::P12), 0.0);
}

TEST(ThresholdScan, StableUnderRefinement) {
  const ModelParams p{-1.0, 0.0, 3};
  const double coarse = threshold_scan(p, Pair::P12, {0.05, 3.0}, 50);
  const double fine = threshold_scan(p, Pair::P12, {0.05, 3.0}, 5000);
  EXPECT_NEAR(coarse, fine, 1e-6);
}

TEST(ThresholdScan, OppositeSignHasNoThreshold) {
  try {
    threshold_scan({1.0, 0.0, 3}, Pair::P12, {0.05, 3.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoThresholdFound);
  }
}

TEST(ThresholdScan, StrongFieldThresholdMatchesOracle) {
  // The field lifts the low-tau concurrence to 1 but the vanishing point
  // moves below the zero-field value.
  const double tau_star = threshold_scan({1.0, 10.0, 3}, Pair::P12, {0.05, 10.0});
  EXPECT_NEAR(tau_star, kNumpyTauStarJ1B10, 1e-6);
  EXPECT_LT(tau_star, b0_threshold_tau());
  EXPECT_GT(concurrence_pair({1.0, 10.0, 3}, {tau_star * 0.99}, Pair::P12), 0.0);
  EXPECT_EQ(concurrence_pair({1.0, 10.0, 3}, {tau_star * 1.01}, Pair::P12), 0.0);
}

}  // namespace
}  // namespace xxring
