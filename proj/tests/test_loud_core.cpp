#include <gtest/gtest.h>

#include <cmath>

#include "loudcrit/loud_core.hpp"
#include "loudcrit/ode.hpp"

using namespace loudcrit;

TEST(InLambda, StrictInequalities) {
  EXPECT_TRUE(in_lambda({-0.6, 1.3}));
  EXPECT_FALSE(in_lambda({-0.5, 1.3}));
  EXPECT_FALSE(in_lambda({-1.4, 1.3}));
  EXPECT_FALSE(in_lambda({-0.6, 1.0}));
}

TEST(ConicData, ReferenceParameter) {
  const ConicData cd = conic_data({-0.6, 1.3});
  EXPECT_NEAR(cd.a, 1.0, 1e-14);
  EXPECT_NEAR(cd.b, -1.875, 1e-14);
  EXPECT_NEAR(cd.c, 0.7211538461538461, 1e-12);
  EXPECT_NEAR(cd.p1, 0.5403194316860983, 1e-13);
  EXPECT_NEAR(cd.p2, 1.3346805683139017, 1e-13);
  EXPECT_NEAR(cd.h0, cd.c, 1e-14);
  EXPECT_NEAR(cd.p1 * cd.p2, cd.c / cd.a, 1e-12);
}

TEST(ConicData, RootsAndEnergyAcrossLambda) {
  for (double F : {1.05, 1.3, 1.7, 2.4}) {
    for (double t : {0.1, 0.5, 0.9}) {
      const double D = -F + t * (F - 0.5);
      const ConicData cd = conic_data({D, F});
      EXPECT_LT(0.0, cd.p1);
      EXPECT_LT(cd.p1, cd.p2);
      const double scale = std::fabs(cd.c) + std::fabs(cd.b) + std::fabs(cd.a);
      EXPECT_LE(std::fabs(conic_q(cd, cd.p1)), 1e-12 * scale);
      EXPECT_LE(std::fabs(conic_q(cd, cd.p2)), 1e-12 * scale * cd.p2 * cd.p2);
      EXPECT_NEAR(cd.h0, (F - D - 1.0) / (2.0 * F * (F - 1.0) * (2.0 * F - 1.0)), 1e-13);
      EXPECT_GT(cd.h0, 0.0);
    }
  }
}

TEST(ConicData, RejectsPoles) {
  EXPECT_THROW((void)conic_data({-0.6, 1.0}), PoleError);
  EXPECT_THROW((void)conic_data({-0.6, 0.5}), PoleError);
  EXPECT_THROW((void)conic_data({-0.6, 0.0}), PoleError);
  EXPECT_THROW((void)first_integral({-0.6, 1.0}, 0.0, 0.0), PoleError);
}

TEST(VectorField, CenterAndInvariantLine) {
  const Params mu{-0.6, 1.3};
  EXPECT_EQ(vector_field(mu, 0.0, 0.0), (std::array<double, 2>{0.0, 0.0}));
  const auto v = vector_field(mu, 1.0, 0.7);
  EXPECT_EQ(v[0], 0.0);
  EXPECT_DOUBLE_EQ(v[1], 1.0 + mu.D + mu.F * 0.49);
  const double p1 = conic_data(mu).p1;
  const auto w = vector_field(mu, p1, 0.0);
  EXPECT_NEAR(w[1], 0.36516, 1e-5);
}

TEST(FirstIntegral, CenterAndConic) {
  const Params mu{-0.6, 1.3};
  const ConicData cd = conic_data(mu);
  EXPECT_NEAR(first_integral(mu, 0.0, 0.0), -cd.c, 1e-14);
  EXPECT_NEAR(first_integral(mu, cd.p1, 0.0), 0.0, 1e-13);
}

TEST(FirstIntegral, ConservedAlongOrbit) {
  const Params mu{-0.6, 1.3};
  const ConicData cd = conic_data(mu);
  const ReturnResult r = loud_orbit_period(mu, 0.1);
  const double h_start = first_integral(mu, cd.p1 - 0.1, 0.0);
  const double h_end = first_integral(mu, r.state[0], r.state[1]);
  EXPECT_LE(std::fabs(h_end - h_start), 1e-8 * std::fabs(h_start));
}
