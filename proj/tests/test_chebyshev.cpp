#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "loudcrit/chebyshev.hpp"
#include "loudcrit/potential_form.hpp"

using namespace loudcrit;

TEST(PsiNu, ClosedForms) {
  for (double x : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(psi_nu(0.0, x), 1.0 / (1.0 - x * x), 1e-14);
    EXPECT_NEAR(psi_nu(2.0, x), x * x / std::pow(1.0 - x * x, 2.0), 1e-12);
  }
}

TEST(PsiNu, DefiningIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> X(0.05, 0.95), N(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double x = X(rng), nu = N(rng);
    const double w = 1.0 - x * x;
    EXPECT_NEAR(psi_nu(nu, x) * w * std::pow(std::sqrt(w) / x, nu), 1.0, 1e-12);
  }
}

TEST(Wronskian, SmallCases) {
  Differentiable f([](double x) { return std::exp(0.3 * x); });
  EXPECT_DOUBLE_EQ(wronskian({f}, 0.7), f(0.7));
  Differentiable one([](double) { return 1.0; });
  Differentiable id([](double x) { return x; });
  EXPECT_NEAR(wronskian({one, id}, 0.4), 1.0, 1e-9);
  Differentiable s([](double x) { return std::sin(x); });
  Differentiable c([](double x) { return std::cos(x); });
  for (double x : {0.0, 0.8, 2.5}) EXPECT_NEAR(wronskian({s, c}, x), -1.0, 1e-8);
}

TEST(ChebOperator, IdentityAndRepeatedFunction) {
  Differentiable f([](double x) { return x * x * x + 0.5; });
  EXPECT_EQ(cheb_operator({}, f, 0.3), f(0.3));
  const Differentiable p = psi_nu_function(-1.0);
  for (double x : {0.2, 0.6}) EXPECT_NEAR(cheb_operator({-1.0}, p, x), 0.0, 1e-9);
}

TEST(ChebOperator, OneStepDirectFormula) {
  Differentiable f([](double x) { return std::exp(x) / (1.0 + x); });
  const double nu = 0.7;
  const Differentiable p = psi_nu_function(nu);
  for (double x : {0.2, 0.5, 0.8}) {
    const double fp = f.derivative(x, 1);
    const double direct = x * (1 - x * x) * (fp - f(x) * p.derivative(x, 1) / p(x));
    EXPECT_NEAR(cheb_operator({nu}, f, x), direct, 1e-8);
    EXPECT_NEAR(d_nu_apply(nu, f(x), fp, x, 1.0 - x), direct, 1e-8);
  }
}

TEST(Momentum, ElementaryIntegrals) {
  EXPECT_NEAR(momentum(1, [](double) { return 1.0; }).value, std::numbers::pi / 2.0, 1e-9);
  EXPECT_NEAR(momentum(1, [](double x) { return x; }).value, 1.0, 1e-9);
  EXPECT_THROW((void)momentum(2, [](double) { return 1.0; }), DivergenceError);
  EXPECT_THROW((void)momentum(0, [](double) { return 1.0; }), DomainError);
}

TEST(Recursion, Coefficients) {
  EXPECT_EQ(recursion_coefficient({-1.0}, 1), 0.0);
  EXPECT_EQ(recursion_coefficient({0.0}, 1), -1.0);
  EXPECT_EQ(recursion_coefficient({0.5, 2.0}, 2), (2.0 - 0.5) * (1.0 - 4.0 - 2.0));
  EXPECT_THROW((void)recursion_coefficient({}, 1), DomainError);
}

TEST(Recursion, BothSidesOnFEven) {
  const PotentialModel m({-0.6, 1.3});
  auto f = [&](double x, double xc) { return m.f_even(x, xc); };
  auto fd = [&](double x, double xc) { return m.f_even_derivative(x, xc); };
  MomentumOptions o;
  o.quad = {1e-11, 1e-10, 4000};
  for (double nu : {-1.0, 0.0}) {
    const RecursionSides s = momentum_recursion_1(nu, f, fd, 1, o);
    EXPECT_NEAR(s.lhs.value, s.rhs.value, 5.0 * (s.lhs.abs_error + s.rhs.abs_error) + 1e-9);
  }
}

TEST(Recursion, GenericWronskianRoute) {
  Differentiable f([](double x) { return x * (1.0 - 0.3 * x * x); });
  const RecursionSides s = momentum_recursion({0.5}, f, 1);
  EXPECT_NEAR(s.lhs.value, s.rhs.value, 1e-6);
}
