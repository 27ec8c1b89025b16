#include <gtest/gtest.h>

#include <cmath>

#include "loudcrit/delta.hpp"

using namespace loudcrit;

// Frozen from an independent high-precision quadrature.
TEST(Delta, RegressionValues) {
  EXPECT_NEAR(delta({-0.6, 1.3}), 10.66725010458709, 1e-9);
  EXPECT_NEAR(delta({-1.2, 1.4}), 3.530640555934447, 1e-9);
  EXPECT_NEAR(delta({-1.4, 1.49}), 57.13845549336816, 1e-7);
}

TEST(Delta, SignChangeAcrossEachVertical) {
  for (double F : {1.06, 1.15, 1.25, 1.35, 1.44}) {
    const double a = delta({-F + 1e-3, F});
    const double b = delta({-0.5 - 1e-3, F});
    EXPECT_LT(a * b, 0.0) << "F=" << F;
  }
}

TEST(Delta, IntegralFinite) {
  const QuadResult r = delta_integral({-0.6, 1.3});
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_LT(r.abs_error, 1e-9);
}

TEST(Delta, RangeOfF) {
  EXPECT_THROW((void)delta({-0.6, 1.6}), DomainError);
}

TEST(Curve, RegressionValues) {
  const std::pair<double, double> ref[] = {
      {1.001, -0.524862272851889}, {1.005, -0.555824512093061}, {1.02, -0.613380266445559},
      {1.3, -1.0753786057367},     {1.35, -1.15524738522163},   {1.4, -1.243783052001524},
      {1.45, -1.34974025219368},   {1.49, -1.4630946587695}};
  for (auto [F, G] : ref) {
    const CurvePoint cp = curve_g(F);
    EXPECT_NEAR(cp.G, G, 1e-9) << "F=" << F;
    EXPECT_LT(std::fabs(cp.residual), 1e-10);
    EXPECT_GT(cp.G, -F);
    EXPECT_LT(cp.G, -0.5);
  }
}

TEST(Curve, TrendsTowardEndpoints) {
  EXPECT_LT(curve_g(1.49).G, curve_g(1.40).G);
  EXPECT_LT(curve_g(1.40).G, curve_g(1.30).G);
  // Close to F = 1 the curve approaches -1/2 (slowly: G(1.02) is about -0.613).
  EXPECT_GT(curve_g(1.001).G, curve_g(1.02).G);
  EXPECT_LT(std::fabs(curve_g(1.001).G + 0.5), 0.03);
}

TEST(Curve, Tabulation) {
  EXPECT_TRUE(tabulate_curve({}).empty());
  const auto pts = tabulate_curve({1.35, 1.40, 1.45, 1.6});
  ASSERT_EQ(pts.size(), 4u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(pts[i].error.empty());
    EXPECT_LT(std::fabs(pts[i].residual), 1e-10);
  }
  EXPECT_NE(pts[3].error.find("DomainError"), std::string::npos);
}

TEST(Curve, GuardBandsFlagged) {
  EXPECT_TRUE(curve_g(1.00005).low_confidence);
  EXPECT_FALSE(curve_g(1.3).low_confidence);
}
