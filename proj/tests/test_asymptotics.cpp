#include <gtest/gtest.h>

#include <cmath>

#include "loudcrit/asymptotics.hpp"

using namespace loudcrit;

TEST(EstimateQuantifier, ExactPowerLaws) {
  const Quantifier a =
      estimate_quantifier([](double d) { return std::pow(d, -0.5); }, Endpoint::finite(1.0));
  EXPECT_NEAR(a.alpha, 0.5, 1e-10);
  EXPECT_NEAR(a.limit, 1.0, 1e-10);
  const Quantifier b = estimate_quantifier([](double x) { return x * x * x; }, Endpoint::plus_infinity());
  EXPECT_NEAR(b.alpha, 3.0, 1e-10);
  EXPECT_NEAR(b.limit, 1.0, 1e-10);
}

TEST(EstimateQuantifier, LogarithmicContamination) {
  EXPECT_THROW((void)estimate_quantifier([](double d) { return std::log(d) / d; },
                                         Endpoint::finite(1.0)),
               FitError);
}

TEST(Catalog, RatiosOfExponents) {
  for (double F : {1.2, 1.4, 1.7}) {
    const PotentialModel m({-0.5 - 0.4 * (F - 0.5), F});
    const QuantifierCatalog c = catalog_n0(m);
    EXPECT_NEAR(c.alpha_l / c.beta_l, (2.0 - F) / (2.0 * (F - 1.0)), 1e-13);
    EXPECT_NEAR(c.alpha_r / c.beta_r, 1.0, 1e-15);
  }
}

TEST(Catalog, TieAtFourThirds) {
  const double F = 4.0 / 3.0, D = -0.9;
  const PotentialModel m({D, F});
  const QuantifierCatalog c = catalog_n0(m);
  EXPECT_NEAR(c.alpha_l / c.beta_l, 1.0, 1e-12);
  EXPECT_NEAR(c.a_l / c.b_l, 4.0 * std::pow(m.h0(), 1.5) / (3.0 * D * D), 1e-12);
  const XiResult x = xi_value(c);
  EXPECT_EQ(x.side, XiSide::Tie);
  EXPECT_GT(x.tie_sum, 0.0);
}

// Below 4/3 the right ratio (= 1) is the smaller one.
TEST(Xi, ArgminSide) {
  const XiResult lo = xi_value(catalog_n0(PotentialModel({-0.7, 1.2})));
  EXPECT_EQ(lo.side, XiSide::Right);
  EXPECT_NEAR(lo.xi, 0.0, 1e-14);
  const XiResult hi = xi_value(catalog_n0(PotentialModel({-1.0, 1.4})));
  EXPECT_EQ(hi.side, XiSide::Left);
  EXPECT_NEAR(hi.xi, 0.25, 1e-12);
}

TEST(Xi, ClosedForms) {
  EXPECT_EQ(xi_n0_closed(1.2), 0.0);
  EXPECT_NEAR(xi_n0_closed(1.4), 0.25, 1e-14);
  EXPECT_NEAR(xi_n1_closed(1.4), 0.25, 1e-14);
  EXPECT_NEAR(xi_n0_closed(1.7), 1.1 / 1.4, 1e-14);
  const XiResult x = xi_value(catalog_n1(PotentialModel({-1.0, 1.4}), -1.0));
  EXPECT_NEAR(x.xi, xi_n1_closed(1.4), 1e-12);
  // Increasing on (4/3, 3/2).
  EXPECT_LT(xi_n0_closed(1.35), xi_n0_closed(1.45));
}

TEST(Catalog, DegenerateNu) {
  const PotentialModel m({-0.7, 1.4});
  EXPECT_THROW((void)catalog_n1(m, -2.0), DegenerateNu);
}

TEST(Catalog, PsiExponentsByFit) {
  const PotentialModel m({-0.7, 1.4});
  const QuantifierCatalog c = catalog_n1(m, -1.0);
  EXPECT_NEAR(c.alpha_r, -0.5, 1e-15);
  const Quantifier qr = estimate_quantifier(
      [&](double d) { return m.psi_big_at(m.at_right_distance(d), -1.0); },
      Endpoint::finite(m.u_right()));
  EXPECT_NEAR(qr.alpha, c.alpha_r, 0.02 * std::fabs(c.alpha_r));
  EXPECT_NEAR(qr.limit, c.a_r, 0.05 * std::fabs(c.a_r));
  FitWindow deep;
  deep.nearest = 1e-40;
  const Quantifier ql = estimate_quantifier(
      [&](double d) { return m.psi_big_at(m.at_left_distance(d), -1.0); },
      Endpoint::finite(m.u_left()), deep);
  EXPECT_NEAR(ql.alpha, c.alpha_l, 0.02 * std::fabs(c.alpha_l));
  EXPECT_NEAR(ql.limit, c.a_l, 0.05 * std::fabs(c.a_l));
}

// The printed left coefficient differs from the one implied by the leading
// monomial; the fit sides with the latter.
TEST(Catalog, PrintedLeftCoefficientKeptSeparately) {
  const PotentialModel m({-0.7, 1.4});
  const QuantifierCatalog c = catalog_n1(m, -1.0);
  EXPECT_GT(std::fabs(c.a_l_printed - c.a_l), 1e-3 * std::fabs(c.a_l));
}
