#ifndef LOUDCRIT_POTENTIAL_FORM_HPP
#define LOUDCRIT_POTENTIAL_FORM_HPP

// Potential normal form of the Loud family.
//
// The change of coordinates (u, v) = (phi(1 - x), (1 - x)^{-F} y) with
// phi(z) = (z^{-F} - 1)/F turns the Loud system into u' = -v, v' = V'(u).
// Every quantity here is evaluated through z = phi^{-1}(u) = (F u + 1)^{-1/F}
// and the five polynomials V0..V4 in z:
//
//   V      = h0 - z^{-2F} V0(z)     V'''  = z^{F}  V3(z)
//   V'     = z^{-F}  V1(z)          V'''' = z^{2F} V4(z)
//   V''    = V2(z)
//
// The interval of the period annulus is u in (-1/F, u_r], i.e.
// z in [1 - p1, +inf).  Near the center (|u| small) the removable 0/0 forms
// in g', g'' and R are evaluated from the Taylor series of V at u = 0.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "loudcrit/errors.hpp"
#include "loudcrit/loud_core.hpp"

namespace loudcrit {

/// phi(z) = (z^{-F} - 1)/F.
[[nodiscard]] inline double phi(double z, double F) {
  if (!(z > 0.0)) throw DomainError("phi requires z > 0");
  return std::expm1(-F * std::log(z)) / F;
}

/// phi^{-1}(u) = (F u + 1)^{-1/F}.
[[nodiscard]] inline double phi_inv(double u, double F) {
  if (!(F * u + 1.0 > 0.0)) throw DomainError("phi_inv requires F u + 1 > 0");
  return std::exp(-std::log1p(F * u) / F);
}

/// V and its first four derivatives at one point.
struct VDerivatives {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = 0.0;
};

/// Side of the well: Left is u < 0 (z > 1), Right is u > 0 (z < 1).
enum class Branch { Left, Right };

/// A point of the interval carried in both coordinates; z is authoritative
/// near the endpoints.
struct PotentialPoint {
  double u = 0.0;
  double z = 1.0;
};

/// Positivity function of the outer-boundary lemma:
/// L(z) = z^{-2F} V1(z)^2 - 2 h0 V2(z).
[[nodiscard]] inline double l_eval(const Params& mu, double z) {
  if (!(z > 0.0)) throw DomainError("l_eval requires z > 0");
  const double D = mu.D;
  const double F = mu.F;
  const double h0 = (F - D - 1.0) / (2.0 * F * (F - 1.0) * (2.0 * F - 1.0));
  const double v1 = (z - 1.0) * (D * (z - 1.0) - 1.0);
  const double v2 = D * (F - 2.0) * z * z - (2.0 * D + 1.0) * (F - 1.0) * z + F * (D + 1.0);
  return std::pow(z, -2.0 * F) * v1 * v1 - 2.0 * h0 * v2;
}

class PotentialModel {
 public:
  static constexpr int kSeriesOrder = 22;

  explicit PotentialModel(const Params& mu) : mu_(mu) {
    if (!in_lambda(mu)) {
      std::ostringstream os;
      os << "potential model requires (D,F)=(" << mu.D << "," << mu.F << ") in Lambda";
      throw DomainError(os.str());
    }
    conic_ = conic_data(mu);
    h0_ = conic_.h0;
    u_left_ = -1.0 / mu.F;
    z_right_ = 1.0 - conic_.p1;
    u_right_ = phi(z_right_, mu.F);
    build_series();
    u_series_ = 0.1 / mu.F;
    // Brackets for the u-space solves (energy <= h0/2) end where V = 3h0/4,
    // strictly above every energy they serve.
    const double quarter = 0.25 * h0_;
    z_half_right_ = solve_deficit_right(quarter);
    z_half_left_ = solve_deficit_left(quarter);
    u_half_right_ = phi(z_half_right_, mu.F);
    u_half_left_ = phi(z_half_left_, mu.F);
  }

  [[nodiscard]] const Params& params() const noexcept { return mu_; }
  [[nodiscard]] const ConicData& conic() const noexcept { return conic_; }
  [[nodiscard]] double h0() const noexcept { return h0_; }
  [[nodiscard]] double u_left() const noexcept { return u_left_; }
  [[nodiscard]] double u_right() const noexcept { return u_right_; }
  /// z at the right end of the interval, 1 - p1.
  [[nodiscard]] double z_right() const noexcept { return z_right_; }

  // --- polynomials in z ---------------------------------------------------

  [[nodiscard]] double poly_v0(double z) const noexcept {
    const double D = mu_.D, F = mu_.F;
    return D / (2.0 - 2.0 * F) * z * z + (1.0 + 2.0 * D) / (2.0 * F - 1.0) * z - (D + 1.0) / (2.0 * F);
  }
  [[nodiscard]] double poly_v1(double z) const noexcept {
    return (z - 1.0) * (mu_.D * (z - 1.0) - 1.0);
  }
  [[nodiscard]] double poly_v2(double z) const noexcept {
    const double D = mu_.D, F = mu_.F;
    return D * (F - 2.0) * z * z - (2.0 * D + 1.0) * (F - 1.0) * z + F * (D + 1.0);
  }
  [[nodiscard]] double poly_v3(double z) const noexcept {
    const double D = mu_.D, F = mu_.F;
    return -2.0 * D * (F - 2.0) * z * z + (2.0 * D + 1.0) * (F - 1.0) * z;
  }
  [[nodiscard]] double poly_v4(double z) const noexcept {
    const double D = mu_.D, F = mu_.F;
    return 2.0 * D * (F * F - 4.0) * z * z - (2.0 * D + 1.0) * (F * F - 1.0) * z;
  }

  // --- points ---------------------------------------------------------------

  /// Point from u; DomainError outside (u_left, u_right].
  [[nodiscard]] PotentialPoint at_u(double u) const {
    if (!(u > u_left_ && u <= u_right_ * (1.0 + 1e-15))) {
      std::ostringstream os;
      os << "u=" << u << " outside (" << u_left_ << ", " << u_right_ << "]";
      throw DomainError(os.str());
    }
    return {u, phi_inv(u, mu_.F)};
  }

  /// Point from z in [1 - p1, +inf).
  [[nodiscard]] PotentialPoint at_z(double z) const {
    if (!(z >= z_right_ * (1.0 - 1e-15)) || !std::isfinite(z)) {
      std::ostringstream os;
      os << "z=" << z << " outside [" << z_right_ << ", inf)";
      throw DomainError(os.str());
    }
    return {phi(z, mu_.F), z};
  }

  /// Point at distance d > 0 to the right of u_left, without cancellation
  /// in F u + 1 = F d.
  [[nodiscard]] PotentialPoint at_left_distance(double d) const {
    if (!(d > 0.0)) throw DomainError("distance to u_left must be positive");
    const double z = std::exp(-std::log(mu_.F * d) / mu_.F);
    return {u_left_ + d, z};
  }

  /// Point at distance d > 0 to the left of u_right, with z computed from d
  /// directly.
  [[nodiscard]] PotentialPoint at_right_distance(double d) const {
    if (!(d > 0.0)) throw DomainError("distance to u_right must be positive");
    const double F = mu_.F;
    const double t = F * d * std::pow(z_right_, F);
    if (!(t < 1.0)) throw DomainError("distance to u_right exceeds the interval");
    const double z = z_right_ * (1.0 + std::expm1(-std::log1p(-t) / F));
    return {u_right_ - d, z};
  }

  // --- V and derivatives ----------------------------------------------------

  /// h0 - V as a function of z alone.
  [[nodiscard]] double deficit_at_z(double z) const {
    if (!(z > 0.0)) throw DomainError("deficit_at_z requires z > 0");
    return deficit_z(z);
  }

  /// h0 - V at a point, free of cancellation near the outer boundary.
  [[nodiscard]] double deficit(const PotentialPoint& p) const {
    if (std::fabs(p.u) < u_series_) return h0_ - series_eval(p.u, 0);
    return deficit_z(p.z);
  }

  /// V' alone, finite for any z the level solver returns.
  [[nodiscard]] double first_derivative(const PotentialPoint& p) const {
    if (std::fabs(p.u) < u_series_) return series_eval(p.u, 1);
    const double zi = 1.0 / p.z;
    if (p.z > 1.0) {
      const double q1 = (1.0 - zi) * (mu_.D * (1.0 - zi) - zi);
      return std::exp((2.0 - mu_.F) * std::log(p.z)) * q1;
    }
    return std::pow(p.z, -mu_.F) * poly_v1(p.z);
  }

  [[nodiscard]] VDerivatives derivatives(const PotentialPoint& p) const {
    VDerivatives d;
    if (std::fabs(p.u) < u_series_) {
      d.v = series_eval(p.u, 0);
      d.d1 = series_eval(p.u, 1);
      d.d2 = series_eval(p.u, 2);
      d.d3 = series_eval(p.u, 3);
      d.d4 = series_eval(p.u, 4);
      return d;
    }
    const double F = mu_.F;
    const double z = p.z;
    d.v = h0_ - deficit_z(z);
    if (z > 1.0) {
      // Factor out z^2 so large z does not overflow the polynomials.
      const double lz = std::log(z);
      d.d1 = std::exp((2.0 - F) * lz) * (poly_v1(z) / (z * z));
      d.d2 = poly_v2(z);
      d.d3 = std::exp((2.0 + F) * lz) * (poly_v3(z) / (z * z));
      d.d4 = std::exp((2.0 + 2.0 * F) * lz) * (poly_v4(z) / (z * z));
    } else {
      d.d1 = std::pow(z, -F) * poly_v1(z);
      d.d2 = poly_v2(z);
      d.d3 = std::pow(z, F) * poly_v3(z);
      d.d4 = std::pow(z, 2.0 * F) * poly_v4(z);
    }
    return d;
  }

  /// (V, V', V'', V''', V'''') at u in (u_left, u_right].
  [[nodiscard]] VDerivatives v_derivatives(double u) const { return derivatives(at_u(u)); }

  // --- R = ((V')^2 - 2 V V'') / (V')^3 and its u-derivative -----------------

  [[nodiscard]] double r_value(const PotentialPoint& p) const {
    if (std::fabs(p.u) < u_series_) return r_series(p.u).first;
    if (p.z > 1.0) return r_scaled(p).first;
    const VDerivatives d = derivatives(p);
    const double num = r_numerator(d);
    return num / (d.d1 * d.d1 * d.d1);
  }

  [[nodiscard]] double r_derivative(const PotentialPoint& p) const {
    if (std::fabs(p.u) < u_series_) return r_series(p.u).second;
    if (p.z > 1.0) return r_scaled(p).second;
    const VDerivatives d = derivatives(p);
    const double num = r_numerator(d);
    const double d1sq = d.d1 * d.d1;
    return (-2.0 * d.v * d.d3 * d.d1 - 3.0 * num * d.d2) / (d1sq * d1sq);
  }

  /// R at u; SingularityError at the center where V' = 0.
  [[nodiscard]] double r_eval(double u) const {
    if (u == 0.0) throw SingularityError("R is singular at u = 0 (V' = 0)");
    const PotentialPoint p = at_u(u);
    const VDerivatives d = derivatives(p);
    return r_numerator(d) / (d.d1 * d.d1 * d.d1);
  }

  /// Removable value of R at the center, -V'''(0)/3.
  [[nodiscard]] double r_at_center() const noexcept { return -vder0_[3] / 3.0; }

  // --- g = sgn(u) sqrt(V) and its inverse ----------------------------------

  [[nodiscard]] double g_eval(double u) const {
    const PotentialPoint p = at_u(u);
    const double v = (std::fabs(u) < u_series_) ? series_eval(u, 0) : h0_ - deficit_z(p.z);
    return std::copysign(std::sqrt(std::fmax(v, 0.0)), u);
  }

  /// Point with V = energy on the given branch.  `deficit` must equal
  /// h0 - energy; passing it separately keeps precision near h0.
  [[nodiscard]] PotentialPoint solve_level(double energy, double deficit, Branch side) const {
    if (!(energy >= 0.0) || !(deficit >= 0.0)) throw DomainError("energy outside [0, h0]");
    if (energy == 0.0) return {0.0, 1.0};
    if (side == Branch::Right) {
      if (deficit == 0.0) return {u_right_, z_right_};
      if (energy <= deficit) {
        const double u = solve_energy_u(energy, 0.0, u_half_right_);
        return {u, phi_inv(u, mu_.F)};
      }
      const double z = solve_deficit_right(deficit);
      return {phi(z, mu_.F), z};
    }
    if (deficit == 0.0) throw DomainError("energy h0 is not attained on the left branch");
    if (energy <= deficit) {
      const double u = solve_energy_u(energy, u_half_left_, 0.0);
      return {u, phi_inv(u, mu_.F)};
    }
    const double z = solve_deficit_left(deficit);
    return {phi(z, mu_.F), z};
  }

  /// g^{-1}(y) for |y| < sqrt(h0).
  [[nodiscard]] double g_inv(double y) const { return g_inv_point(y).u; }

  [[nodiscard]] PotentialPoint g_inv_point(double y) const {
    const double e = y * y;
    if (!(e < h0_)) throw DomainError("g_inv requires |y| < sqrt(h0)");
    return solve_level(e, h0_ - e, y >= 0.0 ? Branch::Right : Branch::Left);
  }

  /// (g^{-1})'(y) = 1/g'(u) = 2 sqrt(V)/|V'| at u = g^{-1}(y).
  [[nodiscard]] double g_inv_d1(double y) const {
    if (y == 0.0) return std::sqrt(2.0);
    const PotentialPoint p = g_inv_point(y);
    return g_inv_d1_at(p, std::fabs(y));
  }

  /// (g^{-1})''(y).  Algebraically -g''/g'^3 = 2 R(u) with u = g^{-1}(y),
  /// which stays regular at y = 0.
  [[nodiscard]] double g_inv_d2(double y) const {
    if (y == 0.0) return 2.0 * r_at_center();
    return 2.0 * r_value(g_inv_point(y));
  }

  // --- the function whose momenta drive the classification -------------------

  /// Twice the even part of x -> x sqrt(h0) (g^{-1})''(x sqrt(h0)) on [0, 1).
  /// `xc` is 1 - x, passed separately so points near 1 keep their precision.
  [[nodiscard]] double f_even(double x, double xc) const {
    if (!(x >= 0.0) || !(xc > 0.0)) throw DomainError("f_even requires x in [0, 1)");
    if (x == 0.0) return 0.0;
    const auto [pr, pl] = level_pair(x, xc);
    return 2.0 * x * std::sqrt(h0_) * (r_value(pr) - r_value(pl));
  }
  [[nodiscard]] double f_even(double x) const { return f_even(x, 1.0 - x); }

  /// d/dx of f_even.
  [[nodiscard]] double f_even_derivative(double x, double xc) const {
    if (!(x >= 0.0) || !(xc > 0.0)) throw DomainError("f_even requires x in [0, 1)");
    if (x == 0.0) return 0.0;
    const auto [pr, pl] = level_pair(x, xc);
    const double sh = std::sqrt(h0_);
    const double dr = first_derivative(pr);
    const double dl = first_derivative(pl);
    // V(u(x)) = x^2 h0  =>  du/dx = 2 x h0 / V'(u).
    const double dur = 2.0 * x * h0_ / dr;
    const double dul = 2.0 * x * h0_ / dl;
    return 2.0 * sh * (r_value(pr) - r_value(pl)) +
           2.0 * x * sh * (r_derivative(pr) * dur - r_derivative(pl) * dul);
  }
  [[nodiscard]] double f_even_derivative(double x) const { return f_even_derivative(x, 1.0 - x); }

  // --- Wronskian quotient for the one-step Chebyshev extension ----------------

  /// Closed form of (1/V') W[(V/(h0-V))^{nu/2}, (h0-V) V^{1/2} R] at a point.
  [[nodiscard]] double psi_big_at(const PotentialPoint& p, double nu) const {
    const VDerivatives d = derivatives(p);
    const double dd = deficit(p);
    const double v = d.v;
    const double num = r_numerator(d);
    const double psi = -4.0 * v * v * dd * d.d1 * d.d3 -
                       num * (d.d1 * d.d1 * (h0_ * (nu - 1.0) + 3.0 * v) + 6.0 * dd * v * d.d2);
    const double d1sq = d.d1 * d.d1;
    return psi / (2.0 * std::sqrt(v) * d1sq * d1sq * d.d1) * std::pow(v / dd, 0.5 * nu);
  }

  [[nodiscard]] double psi_big(double u, double nu) const {
    if (u == 0.0) throw SingularityError("Psi is singular at u = 0");
    const PotentialPoint p = at_u(u);
    if (p.u >= u_right_) throw SingularityError("Psi requires u < u_right");
    return psi_big_at(p, nu);
  }

  /// (V')^2 - 2 V V''.
  [[nodiscard]] static double r_numerator(const VDerivatives& d) {
    return d.d1 * d.d1 - 2.0 * d.v * d.d2;
  }

  /// Derivatives of V at u = 0 (index k holds V^(k)(0), k <= kSeriesOrder).
  [[nodiscard]] const std::array<double, kSeriesOrder + 1>& derivatives_at_center() const noexcept {
    return vder0_;
  }

  /// (g^{-1})' at a solved point with |y| = sqrt(V) known.
  [[nodiscard]] double g_inv_d1_at(const PotentialPoint& p, double abs_y) const {
    if (std::fabs(p.u) < u_series_) {
      // 2 sqrt(V)/|V'| = 2 |y| / |V'|, both O(u): use series quotient.
      const auto b = series_quotient_v1(p.u);  // V'/u
      const auto a = series_sqrt_v(p.u);        // sqrt(V)/|u|
      return 2.0 * a / std::fabs(b);
    }
    return 2.0 * abs_y / std::fabs(derivatives(p).d1);
  }

 private:
  // R and its u-derivative for z > 1 with the powers of z divided out of the
  // polynomials, so z up to the double range stays finite (F near 1 pushes
  // the left turning point to z ~ 1e200 at small deficits).
  [[nodiscard]] std::pair<double, double> r_scaled(const PotentialPoint& p) const {
    const double D = mu_.D, F = mu_.F;
    const double lz = std::log(p.z);
    const double zi = 1.0 / p.z;
    const double q1 = (1.0 - zi) * (D * (1.0 - zi) - zi);
    const double q2 = D * (F - 2.0) - (2.0 * D + 1.0) * (F - 1.0) * zi + F * (D + 1.0) * zi * zi;
    const double q3 = -2.0 * D * (F - 2.0) + (2.0 * D + 1.0) * (F - 1.0) * zi;
    const double v = h0_ - deficit_z(p.z);
    // V' = z^{2-F} q1, V'' = z^2 q2, V''' = z^{2+F} q3; numerator over z^2.
    const double num = std::exp((2.0 - 2.0 * F) * lz) * q1 * q1 - 2.0 * v * q2;
    const double q1sq = q1 * q1;
    const double r = num / (std::exp((4.0 - 3.0 * F) * lz) * q1sq * q1);
    const double dr =
        (-2.0 * v * q3 * q1 - 3.0 * num * q2) / (std::exp((4.0 - 4.0 * F) * lz) * q1sq * q1sq);
    return {r, dr};
  }

  // h0 - V = z^{-2F} V0(z) with V0(z) = a (z - (1 - p1)) (z - (1 - p2)), so the
  // zero at the right end carries no cancellation; z^2 is factored out
  // against overflow at large z.
  [[nodiscard]] double deficit_z(double z) const {
    return std::exp((2.0 - 2.0 * mu_.F) * std::log(z)) * conic_.a * ((z - z_right_) / z) *
           ((z - (1.0 - conic_.p2)) / z);
  }

  // Same in w = log z, finite for any w.
  [[nodiscard]] double deficit_w(double w) const {
    if (w < 700.0) return deficit_z(std::exp(w));
    const double zi = std::exp(-w);
    return std::exp((2.0 - 2.0 * mu_.F) * w) * conic_.a * (1.0 - z_right_ * zi) *
           (1.0 - (1.0 - conic_.p2) * zi);
  }

  // Right branch: deficit increases from 0 at z = 1 - p1 to h0 at z = 1.
  [[nodiscard]] double solve_deficit_right(double target) const {
    auto fn = [&](double z) { return deficit_z(z) - target; };
    return bracket_solve(fn, z_right_, 1.0);
  }

  // Left branch: deficit decreases from h0 at z = 1 to 0 as z -> inf.
  // Solved in w = log z.
  [[nodiscard]] double solve_deficit_left(double target) const {
    auto fn = [&](double w) { return deficit_w(w) - target; };
    const double lead = mu_.D / (2.0 - 2.0 * mu_.F);
    double w_hi = std::max(1.0, std::log(target / lead) / (2.0 - 2.0 * mu_.F) + 1.0);
    int guard = 0;
    while (fn(w_hi) > 0.0) {
      w_hi *= 2.0;
      if (++guard > 60) throw ConvergenceError("no bracket on the left branch");
    }
    const double w = bracket_solve(fn, 0.0, w_hi);
    if (w >= std::log(std::numeric_limits<double>::max())) {
      throw DomainError("left turning point beyond the double range");
    }
    return std::exp(w);
  }

  [[nodiscard]] double solve_energy_u(double energy, double lo, double hi) const {
    auto fn = [&](double u) { return v_accurate(u) - energy; };
    return bracket_solve(fn, lo, hi);
  }

  [[nodiscard]] double v_accurate(double u) const {
    if (std::fabs(u) < u_series_) return series_eval(u, 0);
    return h0_ - deficit_z(phi_inv(u, mu_.F));
  }

  template <class Fn>
  static double bracket_solve(Fn& fn, double lo, double hi) {
    double flo = fn(lo);
    double fhi = fn(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw ConvergenceError("root is not bracketed");
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(
        fn, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
    if (iters >= 200) throw ConvergenceError("bracketing solver did not converge");
    return 0.5 * (r.first + r.second);
  }

  // Both turning points of the level x^2 h0.
  [[nodiscard]] std::pair<PotentialPoint, PotentialPoint> level_pair(double x, double xc) const {
    const double energy = x * x * h0_;
    const double def = h0_ * xc * (1.0 + x);
    return {solve_level(energy, def, Branch::Right), solve_level(energy, def, Branch::Left)};
  }

  // --- Taylor series at u = 0 -------------------------------------------------

  void build_series() {
    // With V^(k) = z^{(k-2)F} P_k(z) the recursion P_{k+1} = -((k-2)F P_k + z P_k')
    // acts on each monomial z^j by the factor -((k-2)F + j), starting from
    // P_1 = V1 with the z^{-F} prefactor.
    const double D = mu_.D, F = mu_.F;
    const std::array<double, 3> v1{D + 1.0, -(2.0 * D + 1.0), D};
    vder0_.fill(0.0);
    std::array<double, 3> pk = v1;
    for (int k = 1; k <= kSeriesOrder; ++k) {
      vder0_[k] = pk[0] + pk[1] + pk[2];
      for (int j = 0; j < 3; ++j) pk[j] *= -((k - 2) * F + j);
    }
    vder0_[0] = 0.0;
    double fact = 1.0;
    for (int k = 0; k <= kSeriesOrder; ++k) {
      if (k > 1) fact *= k;
      coeff_[k] = vder0_[k] / fact;
    }
  }

  // m-th derivative of the truncated Taylor polynomial of V.
  [[nodiscard]] double series_eval(double u, int m) const {
    double acc = 0.0;
    for (int k = kSeriesOrder; k >= m; --k) {
      double c = coeff_[k];
      for (int i = 0; i < m; ++i) c *= (k - i);
      acc = acc * u + c;
    }
    return acc;
  }

  // V'(u)/u from the series (c_1 = 0).
  [[nodiscard]] double series_quotient_v1(double u) const {
    double acc = 0.0;
    for (int k = kSeriesOrder; k >= 2; --k) acc = acc * u + k * coeff_[k];
    return acc;
  }

  // sqrt(V)/|u| from the series (V/u^2 = sum c_k u^{k-2}).
  [[nodiscard]] double series_sqrt_v(double u) const {
    double acc = 0.0;
    for (int k = kSeriesOrder; k >= 2; --k) acc = acc * u + coeff_[k];
    return std::sqrt(acc);
  }

  // R and R' near the center from the series A/B^3 with
  // A = ((V')^2 - 2 V V'')/u^3 and B = V'/u.
  [[nodiscard]] std::pair<double, double> r_series(double u) const {
    constexpr int K = kSeriesOrder;
    std::array<double, K + 1> v{}, v1{}, v2{};
    for (int k = 0; k <= K; ++k) v[k] = coeff_[k];
    for (int k = 0; k < K; ++k) v1[k] = (k + 1) * coeff_[k + 1];
    for (int k = 0; k + 1 < K; ++k) v2[k] = (k + 1) * (k + 2) * coeff_[k + 2];
    std::array<double, K + 1> n{};
    for (int i = 0; i <= K; ++i) {
      for (int j = 0; i + j <= K; ++j) n[i + j] += v1[i] * v1[j] - 2.0 * v[i] * v2[j];
    }
    // A(u) = sum_{k>=3} n_k u^{k-3}, B(u) = sum_{k>=1} v1_k u^{k-1}.
    double a = 0.0, ap = 0.0, b = 0.0, bp = 0.0;
    for (int k = K; k >= 3; --k) {
      ap = ap * u + a;
      a = a * u + n[k];
    }
    for (int k = K - 1; k >= 1; --k) {
      bp = bp * u + b;
      b = b * u + v1[k];
    }
    const double b3 = b * b * b;
    return {a / b3, ap / b3 - 3.0 * a * bp / (b3 * b)};
  }

  Params mu_;
  ConicData conic_;
  double h0_ = 0.0;
  double u_left_ = 0.0;
  double u_right_ = 0.0;
  double z_right_ = 0.0;
  double u_series_ = 0.0;
  double z_half_right_ = 0.0;
  double z_half_left_ = 0.0;
  double u_half_right_ = 0.0;
  double u_half_left_ = 0.0;
  std::array<double, kSeriesOrder + 1> vder0_{};
  std::array<double, kSeriesOrder + 1> coeff_{};
};

}  // namespace loudcrit

#endif  // LOUDCRIT_POTENTIAL_FORM_HPP
