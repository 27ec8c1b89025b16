#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "loudcrit/criticality.hpp"
#include "loudcrit/period.hpp"

using namespace loudcrit;

namespace {
bool has_flag(const CriticalityVerdict& v, const std::string& f) {
  return std::find(v.flags.begin(), v.flags.end(), f) != v.flags.end();
}
}  // namespace

TEST(N1, RegressionValues) {
  EXPECT_NEAR(n1_of_mu(PotentialModel({-0.6, 1.3})).value, -1.81536262368, 1e-8);
  EXPECT_NEAR(n1_of_mu(PotentialModel({-0.7, 1.2})).value, -0.743919855147, 1e-8);
  EXPECT_NEAR(n1_of_mu(PotentialModel({-1.2, 1.4})).value, -0.721544967558, 1e-8);
}

TEST(N1, OppositeSignToDelta) {
  int checked = 0;
  for (double F : {1.12, 1.2, 1.28, 1.36, 1.44}) {
    for (double t : {0.2, 0.8}) {
      const Params mu{-F + t * (F - 0.5), F};
      const double d = delta(mu);
      if (std::fabs(d) <= 1e-6) continue;
      const double n1 = n1_of_mu(PotentialModel(mu)).value;
      EXPECT_LT(n1 * d, 0.0) << mu.D << "," << mu.F;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 10);
}

TEST(N1, VanishesOnCurve) {
  const double G = curve_g(1.4).G;
  const MomentumValue n1 = n1_of_mu(PotentialModel({G, 1.4}));
  EXPECT_LT(std::fabs(n1.value), 1e-8);
}

TEST(N1, DivergesWhenXiLarge) {
  EXPECT_THROW((void)n1_of_mu(PotentialModel({-1.0, 1.7})), DivergenceError);
}

// lim T'(h) = N1 / (sqrt(2) h0) on the regular side.
TEST(N1, AgreesWithPeriodFit) {
  for (Params mu : {Params{-0.6, 1.3}, Params{-0.7, 1.2}}) {
    const PotentialModel m(mu);
    const double n1 = n1_of_mu(m).value;
    const PolycycleAsymptotics a = fit_polycycle_asymptotics(m);
    EXPECT_NEAR(a.delta_star_fit * std::sqrt(2.0) * m.h0(), n1, 0.02 * std::fabs(n1));
  }
}

TEST(Classify, RegularBelowFourThirds) {
  const CriticalityVerdict v = classify({-0.7, 1.2});
  EXPECT_EQ(v.case_taken, CaseKind::B1);
  EXPECT_EQ(v.case_index, 1);
  EXPECT_TRUE(v.regular());
}

TEST(Classify, CaseA) {
  const CriticalityVerdict v = classify({-1.0, 1.7});
  EXPECT_EQ(v.case_taken, CaseKind::A);
  EXPECT_NEAR(v.xi, 1.1 / 1.4, 1e-12);
  EXPECT_TRUE(v.regular());
}

TEST(Classify, CriticalityOneOnCurve) {
  const double G = curve_g(1.4).G;
  const CriticalityVerdict v = classify({G, 1.4});
  EXPECT_EQ(v.case_taken, CaseKind::B2);
  ASSERT_TRUE(v.bound && v.lower_bound);
  EXPECT_EQ(*v.bound, 1);
  EXPECT_EQ(*v.lower_bound, 1);
  EXPECT_NEAR(v.xi, 0.25, 1e-12);
  EXPECT_EQ(v.n_used, 1);
  EXPECT_TRUE(has_flag(v, "on_curve"));
}

TEST(Classify, OnCurveBelowFourThirds) {
  const double G = curve_g(1.3).G;
  const CriticalityVerdict v = classify({G, 1.3});
  EXPECT_EQ(v.case_taken, CaseKind::LowerBoundOnly);
  ASSERT_TRUE(v.lower_bound.has_value());
  EXPECT_EQ(*v.lower_bound, 1);
  EXPECT_FALSE(v.bound.has_value());
}

TEST(Classify, GuardedAndOutside) {
  EXPECT_EQ(classify({-0.6, 0.9}).reason, Reason::OutOfLambda);
  const CriticalityVerdict f2 = classify({-1.0, 2.0});
  EXPECT_EQ(f2.reason, Reason::FEq2);
  EXPECT_TRUE(has_flag(f2, "a_l_sign_change"));
  EXPECT_EQ(classify({-1.0, 1.5}).reason, Reason::FEq32Log);
  EXPECT_EQ(classify({-0.5, 1.2}).reason, Reason::DEqMinusHalf);
}

TEST(Classify, BoundPresentOnlyForDecidedCases) {
  for (Params mu : {Params{-0.7, 1.2}, Params{-1.0, 1.7}, Params{-1.0, 2.0}, Params{-0.6, 0.9}}) {
    const CriticalityVerdict v = classify(mu);
    const bool decided = v.case_taken == CaseKind::A || v.case_taken == CaseKind::B1 ||
                         v.case_taken == CaseKind::B2;
    EXPECT_EQ(v.bound.has_value(), decided);
  }
}

// Near F = 1 and D = -F the deficits are tiny; every stage must still finish.
TEST(Classify, EdgesOfWindow) {
  for (Params mu : {Params{-0.51, 1.05}, Params{-1.0495, 1.05}, Params{-1.99, 2.45}}) {
    const CriticalityVerdict v = classify(mu);
    EXPECT_NE(v.reason, Reason::StageFailure) << v.stage << ": " << v.detail;
  }
}

TEST(Scan, SmallGridOrderAndKinds) {
  const auto recs = scan_lambda(Window{}, 8, {}, true, 2);
  ASSERT_GE(recs.size(), 64u);
  for (std::size_t i = 0; i < recs.size(); ++i) EXPECT_EQ(recs[i].index, i);
  for (std::size_t i = 0; i < 64; ++i) {
    EXPECT_EQ(recs[i].kind, NodeKind::Grid);
    const CriticalityVerdict& v = recs[i].verdict;
    if (std::fabs(v.mu.D + 0.5) < 1e-4) {
      EXPECT_EQ(v.reason, Reason::DEqMinusHalf);
    } else if (!in_lambda(v.mu)) {
      EXPECT_EQ(v.reason, Reason::OutOfLambda);
    }
  }
  const auto single = scan_lambda(Window{}, 8, {}, true, 1);
  ASSERT_EQ(single.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(single[i].verdict.case_taken, recs[i].verdict.case_taken);
  }
  EXPECT_THROW((void)scan_lambda(Window{-0.5, -2.0, 1.05, 2.45}, 8), DomainError);
}

TEST(Scan, ALSignChangeAcrossFTwo) {
  const double D = -1.0;
  const double lo = catalog_n0(PotentialModel({D, 1.99})).a_l;
  const double hi = catalog_n0(PotentialModel({D, 2.01})).a_l;
  EXPECT_LT(lo * hi, 0.0);
}
