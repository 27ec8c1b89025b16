#ifndef LOUDCRIT_LOUD_CORE_HPP
#define LOUDCRIT_LOUD_CORE_HPP

// The dehomogenized Loud family
//
//   x' = -y + x y,   y' = x + D x^2 + F y^2,
//
// its first integral H = (1-x)^{-2F} (y^2/2 - q(x)) and the invariant conic
// y^2/2 = q(x) whose branch through (p1, 0) bounds the period annulus.

#include <array>
#include <cmath>
#include <sstream>

#include "loudcrit/errors.hpp"

namespace loudcrit {

/// A point mu = (D, F) of the parameter plane.
struct Params {
  double D = 0.0;
  double F = 0.0;

  friend bool operator==(const Params&, const Params&) = default;
};

/// Open region F > 1, D < -1/2, D + F > 0 where the outer boundary of the
/// period annulus is the hyperbola branch plus the line at infinity.
/// Strict inequalities, no tolerance.
[[nodiscard]] constexpr bool in_lambda(const Params& mu) noexcept {
  return mu.F > 1.0 && mu.D < -0.5 && mu.D + mu.F > 0.0;
}

/// Coefficients of q(x) = a x^2 + b x + c, its real roots p1 < p2 and the
/// outer-boundary energy h0.
struct ConicData {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double h0 = 0.0;
};

namespace detail {

inline void require_regular_F(double F) {
  if (F == 0.0 || F == 0.5 || F == 1.0) {
    std::ostringstream os;
    os << "first integral has a pole at F=" << F;
    throw PoleError(os.str());
  }
}

inline std::array<double, 3> conic_coefficients(double D, double F) {
  require_regular_F(F);
  return {D / (2.0 * (1.0 - F)), (D - F + 1.0) / ((1.0 - F) * (1.0 - 2.0 * F)),
          (F - D - 1.0) / (2.0 * F * (1.0 - F) * (1.0 - 2.0 * F))};
}

}  // namespace detail

[[nodiscard]] inline ConicData conic_data(const Params& mu) {
  const double D = mu.D;
  const double F = mu.F;
  const auto [a, b, c] = detail::conic_coefficients(D, F);

  ConicData out;
  out.a = a;
  out.b = b;
  out.c = c;
  out.h0 = (F - D - 1.0) / (2.0 * F * (F - 1.0) * (2.0 * F - 1.0));

  const double disc = out.b * out.b - 4.0 * out.a * out.c;
  if (disc < 0.0) {
    std::ostringstream os;
    os << "q has complex roots at (D,F)=(" << D << "," << F << ")";
    throw ComplexRootsError(os.str());
  }
  const double sq = std::sqrt(disc);
  if (out.a == 0.0) {
    // Degenerate (D = 0): q is linear.
    if (out.b == 0.0) throw ComplexRootsError("q is constant");
    out.p1 = out.p2 = -out.c / out.b;
    return out;
  }
  // Cancellation-free pair of roots.
  const double q = -0.5 * (out.b + std::copysign(sq, out.b));
  double r1 = q / out.a;
  double r2 = (q != 0.0) ? out.c / q : r1;
  // p1 is (-b - sqrt)/(2a), p2 is (-b + sqrt)/(2a).
  const double lo = std::fmin(r1, r2);
  const double hi = std::fmax(r1, r2);
  if (out.a > 0.0) {
    out.p1 = lo;
    out.p2 = hi;
  } else {
    out.p1 = hi;
    out.p2 = lo;
  }
  return out;
}

/// Value of q(x) = a x^2 + b x + c.
[[nodiscard]] inline double conic_q(const ConicData& cd, double x) noexcept {
  return (cd.a * x + cd.b) * x + cd.c;
}

[[nodiscard]] constexpr std::array<double, 2> vector_field(const Params& mu, double x,
                                                           double y) noexcept {
  return {-y + x * y, x + mu.D * x * x + mu.F * y * y};
}

/// H(x, y) on the branch x < 1 containing the center.
[[nodiscard]] inline double first_integral(const Params& mu, double x, double y) {
  detail::require_regular_F(mu.F);
  if (!(x < 1.0)) throw DomainError("first integral is evaluated on the branch x < 1");
  const auto [a, b, c] = detail::conic_coefficients(mu.D, mu.F);
  return std::pow(1.0 - x, -2.0 * mu.F) * (0.5 * y * y - ((a * x + b) * x + c));
}

}  // namespace loudcrit

#endif  // LOUDCRIT_LOUD_CORE_HPP
