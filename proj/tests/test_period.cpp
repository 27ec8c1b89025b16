#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "loudcrit/delta.hpp"
#include "loudcrit/ode.hpp"
#include "loudcrit/period.hpp"

using namespace loudcrit;

namespace {
const Params kRef{-0.6, 1.3};
}

TEST(Period, HarmonicLimit) {
  const PotentialModel m(kRef);
  EXPECT_NEAR(period_energy(m, 1e-8).T, 2.0 * std::numbers::pi, 1e-4);
}

TEST(Period, PositiveAndContinuous) {
  const PotentialModel m(kRef);
  double prev = period_energy(m, 0.01 * m.h0()).T;
  for (int i = 2; i < 100; ++i) {
    const double T = period_energy(m, 0.01 * i * m.h0()).T;
    EXPECT_GT(T, 0.0);
    EXPECT_LT(std::fabs(T - prev), 0.1);
    prev = T;
  }
}

TEST(Period, RegressionAtHalfEnergy) {
  const PotentialModel m(kRef);
  const double T = period_energy(m, 0.5 * m.h0()).T;
  const double u = m.solve_level(0.5 * m.h0(), 0.5 * m.h0(), Branch::Right).u;
  EXPECT_NEAR(T, potential_orbit_period(m, u).time, 1e-6 * T);
  EXPECT_NEAR(T, 5.7624926258806, 1e-10);
}

TEST(Period, SectionMatchesLoudOde) {
  const PotentialModel m(kRef);
  const double P = period_section(m, 0.1);
  EXPECT_NEAR(P, loud_orbit_period(kRef, 0.1).time, 1e-6 * P);
}

TEST(Period, SectionEnergyOrientation) {
  const PotentialModel m(kRef);
  double prev = m.h0();
  for (double s : {1e-6, 1e-4, 1e-2, 0.1}) {
    const double z = section_energy(m, s);
    EXPECT_LT(z, prev);
    prev = z;
  }
}

TEST(LimitPPrime, MatchesDelta) {
  for (Params mu : {kRef, Params{-1.3, 1.44}}) {
    const PotentialModel m(mu);
    const double d = delta(mu);
    EXPECT_NEAR(limit_p_prime(m), d, 0.01 * std::fabs(d));
  }
  const double G = curve_g(1.4).G;
  const double lo = limit_p_prime(PotentialModel({G - 0.05, 1.4}));
  const double hi = limit_p_prime(PotentialModel({G + 0.05, 1.4}));
  EXPECT_LT(lo * hi, 0.0);
  EXPECT_THROW((void)limit_p_prime(PotentialModel({-1.0, 1.7})), DomainError);
}

TEST(PolycycleFit, RegularSideHasFiniteLimit) {
  // T'(h0-) = N1 / (sqrt(2) h0); N1 frozen from the momentum quadrature.
  const struct {
    Params mu;
    double n1;
  } ref[] = {{{-0.6, 1.3}, -1.81536262368},
             {{-0.7, 1.2}, -0.743919855147},
             {{-1.2, 1.4}, -0.721544967558}};
  for (const auto& r : ref) {
    const PotentialModel m(r.mu);
    const PolycycleAsymptotics a = fit_polycycle_asymptotics(m);
    const double expect = r.n1 / (std::sqrt(2.0) * m.h0());
    EXPECT_NEAR(a.gamma_fit, 0.0, 1e-12);
    EXPECT_NEAR(a.delta_star_fit, expect, 0.02 * std::fabs(expect));
  }
}

TEST(PolycycleFit, BlowUpExponent) {
  for (Params mu : {Params{-1.0, 1.7}, Params{-1.5, 2.4}}) {
    const PotentialModel m(mu);
    const PolycycleAsymptotics a = fit_polycycle_asymptotics(m);
    const double xi = (3.0 * mu.F - 4.0) / (2.0 * (mu.F - 1.0));
    EXPECT_NEAR(a.gamma_fit, 0.5 - xi, 0.05 * std::fabs(0.5 - xi));
  }
}

// The Loud period decreases toward the boundary at (-1, 1.7), where
// (F-2)/D > 0, and increases at (-1.5, 2.4), where (F-2)/D < 0.
TEST(PolycycleFit, SignOfLeadingCoefficient) {
  const PotentialModel a({-1.0, 1.7});
  EXPECT_LT(fit_polycycle_asymptotics(a).delta_star_fit, 0.0);
  const double s1 = loud_orbit_period({-1.0, 1.7}, 1e-2).time;
  const double s2 = loud_orbit_period({-1.0, 1.7}, 1e-4).time;
  EXPECT_GT(s1, s2);
  const PotentialModel b({-1.5, 2.4});
  EXPECT_GT(fit_polycycle_asymptotics(b).delta_star_fit, 0.0);
}

TEST(PolycycleFit, WindowBelowResolution) {
  const PotentialModel m(kRef);
  AsymptoticsOptions o;
  o.e_lo = 1e-17;
  EXPECT_THROW((void)fit_polycycle_asymptotics(m, o), FitError);
}

TEST(CriticalCount, RegularAndWitness) {
  const PotentialModel reg({-0.7, 1.2});
  const double h0 = reg.h0();
  EXPECT_EQ(count_critical_periods(reg, 0.95 * h0, h0 * (1 - 1e-9), 40).count, 0);
  EXPECT_EQ(count_critical_periods(reg, 0.95 * h0, h0 * (1 - 1e-9), 1).count, 0);
  const double G = curve_g(1.4).G;
  int with = 0;
  for (double off : {-0.02, 0.02}) {
    const PotentialModel m({G + off, 1.4});
    const CriticalCount c = count_critical_periods(m, 0.95 * m.h0(), m.h0() * (1 - 1e-9), 40);
    EXPECT_FALSE(c.unstable);
    with += c.count >= 1;
  }
  EXPECT_EQ(with, 1);
}
