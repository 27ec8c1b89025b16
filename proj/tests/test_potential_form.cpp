#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "loudcrit/chebyshev.hpp"
#include "loudcrit/potential_form.hpp"

using namespace loudcrit;

namespace {
const Params kRef{-0.6, 1.3};
}

TEST(Phi, FixedPointsAndInverse) {
  EXPECT_EQ(phi(1.0, 1.3), 0.0);
  EXPECT_EQ(phi_inv(0.0, 1.3), 1.0);
  const double zr = 1.0 - conic_data(kRef).p1;
  EXPECT_NEAR(phi(zr, 1.3), 1.3436, 1e-4);
  for (double u : {-0.7, -0.2, 0.3, 1.1}) EXPECT_NEAR(phi(phi_inv(u, 1.3), 1.3), u, 1e-13);
}

TEST(Potential, CenterIsNondegenerateMinimum) {
  const PotentialModel m(kRef);
  const VDerivatives d = m.v_derivatives(0.0);
  EXPECT_NEAR(d.v, 0.0, 1e-15);
  EXPECT_NEAR(d.d1, 0.0, 1e-15);
  EXPECT_NEAR(d.d2, 1.0, 1e-12);
  EXPECT_NEAR(m.poly_v2(1.0), 1.0, 1e-14);
}

TEST(Potential, MonotoneWell) {
  const PotentialModel m({-1.2, 1.7});
  for (const double end : {m.u_left(), m.u_right()}) {
    double prev = 0.0;
    for (int i = 1; i < 200; ++i) {
      const double v = m.v_derivatives(0.999 * end * i / 199.0).v;
      EXPECT_GT(v, prev);
      prev = v;
    }
  }
}

TEST(Potential, BoundaryValues) {
  const PotentialModel m(kRef);
  const PotentialPoint r{m.u_right(), m.z_right()};
  EXPECT_NEAR(m.deficit(r), 0.0, 1e-15);
  const double p1 = conic_data(kRef).p1;
  EXPECT_NEAR(m.derivatives(r).d1, std::pow(m.z_right(), -kRef.F) * p1 * (kRef.D * p1 + 1.0), 1e-12);
  // Deficit ~ d^{(2F-2)/F} at the left end.
  EXPECT_NEAR(m.deficit(m.at_left_distance(1e-40)), 0.0, 1e-17);
}

TEST(Potential, FirstDerivativeMatchesCentralDifference) {
  const PotentialModel m(kRef);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  for (int i = 0; i < 20; ++i) {
    const double u = (i % 2 ? m.u_right() : m.u_left()) * U(rng);
    const double eps = 1e-6;
    const double fd = (m.v_derivatives(u + eps).v - m.v_derivatives(u - eps).v) / (2 * eps);
    const double d1 = m.v_derivatives(u).d1;
    EXPECT_NEAR(fd, d1, 1e-6 * std::fmax(1.0, std::fabs(d1)));
  }
}

TEST(GInverse, RoundTripAndCenter) {
  const PotentialModel m(kRef);
  EXPECT_EQ(m.g_eval(0.0), 0.0);
  EXPECT_EQ(m.g_inv(0.0), 0.0);
  std::mt19937_64 rng(5);
  const double s = std::sqrt(m.h0());
  std::uniform_real_distribution<double> U(-0.999 * s, 0.999 * s);
  for (int i = 0; i < 100; ++i) {
    const double y = U(rng);
    EXPECT_NEAR(m.g_eval(m.g_inv(y)), y, 1e-10);
  }
}

TEST(GInverse, SecondDerivativeAgainstDifferences) {
  const PotentialModel m(kRef);
  const double s = std::sqrt(m.h0());
  for (double t : {-0.8, -0.4, 0.3, 0.7}) {
    const double y = t * s;
    const double h = 1e-4 * s;
    const double fd = (m.g_inv(y + h) - 2.0 * m.g_inv(y) + m.g_inv(y - h)) / (h * h);
    EXPECT_NEAR(m.g_inv_d2(y), fd, 1e-5 * std::fabs(fd));
  }
}

TEST(FEven, VanishesAtZero) {
  const PotentialModel m(kRef);
  EXPECT_EQ(m.f_even(0.0), 0.0);
  // Even part: recomputed from g_inv_d2 at +y and -y.
  const double x = 0.4, y = x * std::sqrt(m.h0());
  const double direct = x * std::sqrt(m.h0()) * (m.g_inv_d2(y) - m.g_inv_d2(-y));
  EXPECT_NEAR(m.f_even(x), direct, 1e-12 * std::fabs(direct));
}

TEST(RFunction, DefiningIdentityAndBoundarySign) {
  const PotentialModel m(kRef);
  for (double t : {-0.6, -0.2, 0.25, 0.8}) {
    const double u = t < 0 ? -t * m.u_left() : t * m.u_right();
    const VDerivatives d = m.v_derivatives(u);
    const double lhs = m.r_eval(u) * d.d1 * d.d1 * d.d1 + 2.0 * d.v * d.d2 - d.d1 * d.d1;
    EXPECT_NEAR(lhs, 0.0, 1e-10);
  }
  const PotentialPoint r{m.u_right(), m.z_right()};
  const double rv = m.r_value(r);
  EXPECT_TRUE(std::isfinite(rv));
  EXPECT_GT(rv, 0.0);
  EXPECT_NEAR(rv, 0.0873579, 1e-6);
}

TEST(LFunction, Anchors) {
  for (double F : {1.1, 1.3, 1.45, 2.2}) {
    const Params edge{-F, F};
    EXPECT_NEAR(l_eval(edge, 1.0 - conic_data(edge).p1), 1.0 / (F * F), 1e-10);
    const Params half{-0.5, F};
    const double closed =
        (std::pow(F, F) * std::pow(F - 1.0, 1.0 - F) + 2.0 - 3.0 * F) / (4.0 * F * F * (F - 1.0));
    EXPECT_NEAR(l_eval(half, 1.0 - conic_data(half).p1), closed, 1e-10);
  }
  EXPECT_NEAR(l_eval(kRef, 1.0 - conic_data(kRef).p1), 0.0881345, 1e-6);
}

// The positivity only holds for F below 2 near D = -1/2: the D = -1/2
// anchor itself changes sign at F = 2.
TEST(LFunction, SignNearHalfLine) {
  const Params below{-0.52, 1.9}, above{-0.52, 2.4};
  EXPECT_GT(l_eval(below, 1.0 - conic_data(below).p1), 0.0);
  EXPECT_LT(l_eval(above, 1.0 - conic_data(above).p1), 0.0);
  const PotentialModel m(above);
  const VDerivatives d = m.derivatives({m.u_right(), m.z_right()});
  EXPECT_NEAR(d.d1 * d.d1 - 2.0 * m.h0() * d.d2, l_eval(above, m.z_right()), 1e-12);
}

TEST(PsiBig, MatchesWronskian) {
  const PotentialModel m(kRef);
  for (double nu : {-1.0, 0.5, 1.3}) {
    for (double u : {-0.4, 0.6}) {
      Differentiable f1([&](double x) {
        const PotentialPoint p = m.at_u(x);
        return std::pow(m.derivatives(p).v / m.deficit(p), 0.5 * nu);
      });
      Differentiable f2([&](double x) {
        const PotentialPoint p = m.at_u(x);
        return m.deficit(p) * std::sqrt(m.derivatives(p).v) * m.r_value(p);
      });
      const double w = wronskian({f1, f2}, u) / m.v_derivatives(u).d1;
      EXPECT_NEAR(m.psi_big(u, nu), w, 1e-5 * std::fabs(w));
    }
  }
}

TEST(PsiBig, SingularAtCenter) {
  const PotentialModel m(kRef);
  EXPECT_THROW((void)m.psi_big(0.0, -1.0), SingularityError);
}

TEST(PotentialModel, RejectsOutsideLambda) {
  EXPECT_THROW(PotentialModel({-0.4, 1.3}), DomainError);
}

// Parameters with tiny deficits push z past 1e150; values must stay finite.
TEST(PotentialModel, ExtremeParameters) {
  for (Params mu : {Params{-0.51, 1.05}, Params{-1.0495, 1.05}}) {
    const PotentialModel m(mu);
    EXPECT_TRUE(std::isfinite(m.f_even(0.999999)));
    EXPECT_TRUE(std::isfinite(m.f_even_derivative(0.999999)));
  }
}
