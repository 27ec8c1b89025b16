#ifndef LOUDCRIT_PERIOD_HPP
#define LOUDCRIT_PERIOD_HPP

// Period function of the potential system in the energy and section
// parametrizations, derivative estimates near the outer boundary, and
// counting of critical periods.
//
// With u = g^{-1}(sqrt(h) sin t) both turning points are regular:
//   T(h) = sqrt(2) int_{-pi/2}^{pi/2} (g^{-1})'(sqrt(h) sin t) dt.
// Every level is passed as the pair (energy, h0 - energy) so that periods
// within 1e-12 of the outer boundary keep full relative accuracy.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "loudcrit/errors.hpp"
#include "loudcrit/ode.hpp"
#include "loudcrit/potential_form.hpp"
#include "loudcrit/quadrature.hpp"

namespace loudcrit {

struct PeriodSample {
  double h = 0.0;
  double T = 0.0;
  double u_minus = 0.0;
  double u_plus = 0.0;
  double quad_error = 0.0;
};

struct PeriodOptions {
  QuadOptions quad{0.0, 1e-13, 2000};
};

/// T at the level with deficit e = h0 - h, 0 < e < h0.
[[nodiscard]] inline PeriodSample period_deficit(const PotentialModel& m, double e,
                                                 const PeriodOptions& opt = {}) {
  const double h0 = m.h0();
  if (!(e > 0.0 && e < h0)) throw DomainError("period requires 0 < h < h0");
  const double h = h0 - e;
  const double sh = std::sqrt(h);
  auto integrand = [&](double t, Branch side) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double level = h * s * s;
    if (level == 0.0) return std::sqrt(2.0);
    const PotentialPoint p = m.solve_level(level, e + h * c * c, side);
    return m.g_inv_d1_at(p, sh * std::fabs(s));
  };
  const double hp = 0.5 * std::numbers::pi;
  const QuadResult r = integrate_adaptive([&](double t) { return integrand(t, Branch::Right); },
                                          0.0, hp, opt.quad);
  const QuadResult l = integrate_adaptive([&](double t) { return integrand(-t, Branch::Left); },
                                          0.0, hp, opt.quad);
  if (!r.converged || !l.converged) throw QuadratureError("period quadrature did not converge");
  PeriodSample out;
  out.h = h;
  out.T = std::sqrt(2.0) * (r.value + l.value);
  out.quad_error = std::sqrt(2.0) * (r.abs_error + l.abs_error);
  out.u_plus = m.solve_level(h, e, Branch::Right).u;
  out.u_minus = m.solve_level(h, e, Branch::Left).u;
  return out;
}

/// T(h) for 0 < h < h0.
[[nodiscard]] inline PeriodSample period_energy(const PotentialModel& m, double h,
                                                const PeriodOptions& opt = {}) {
  if (!(h > 0.0 && h < m.h0())) throw DomainError("period requires 0 < h < h0");
  PeriodSample p = period_deficit(m, m.h0() - h, opt);
  p.h = h;
  return p;
}

/// h0 - zeta(s), the deficit of the level through (p1 - s, 0).
[[nodiscard]] inline double section_deficit(const PotentialModel& m, double s) {
  if (!(s > 0.0)) throw DomainError("section parameter must be positive");
  const double z = m.z_right() + s;
  if (!(z < 1.0)) throw DomainError("section point must lie between the center and p1");
  return m.deficit_at_z(z);
}

/// zeta(s) = V(phi(1 - p1 + s)).
[[nodiscard]] inline double section_energy(const PotentialModel& m, double s) {
  return m.h0() - section_deficit(m, s);
}

/// P(s) = T(zeta(s)), the period of the Loud orbit through (p1 - s, 0).
[[nodiscard]] inline double period_section(const PotentialModel& m, double s,
                                           const PeriodOptions& opt = {}) {
  return period_deficit(m, section_deficit(m, s), opt).T;
}

/// Period of the potential orbit through (u_plus, 0) by direct integration.
inline ReturnResult potential_orbit_period(const PotentialModel& m, double u_plus,
                                           const OdeOptions& opt = {}) {
  auto f = [&m](const State2& st) {
    return State2{-st[1], m.v_derivatives(st[0]).d1};
  };
  return first_return(f, {u_plus, 0.0}, 0.0, opt);
}

// --- derivatives --------------------------------------------------------------

/// T'(h) at deficit e by a central difference with step kappa e.
[[nodiscard]] inline double period_derivative_deficit(const PotentialModel& m, double e,
                                                      double kappa = 0.1,
                                                      const PeriodOptions& opt = {}) {
  const double de = kappa * e;
  const double tp = period_deficit(m, e + de, opt).T;
  const double tm = period_deficit(m, e - de, opt).T;
  // dT/dh = -dT/de.
  return -(tp - tm) / (2.0 * de);
}

/// T'(h) with the step max(1e-8, 1e-4 (h0 - h)), capped at half the
/// distance to h0.
[[nodiscard]] inline double period_derivative(const PotentialModel& m, double h,
                                              const PeriodOptions& opt = {}) {
  const double e = m.h0() - h;
  if (!(e > 0.0 && h > 0.0)) throw DomainError("period derivative requires 0 < h < h0");
  const double step = std::min(std::max(1e-8, 1e-4 * e), 0.5 * std::min(e, h));
  return period_derivative_deficit(m, e, step / e, opt);
}

namespace detail {

// Least squares with fixed exponents: y ~ sum c_j x^{p_j}.  Returns the
// coefficients and the rms residual.
inline std::pair<Eigen::VectorXd, double> power_lsq(const std::vector<double>& xs,
                                                    const std::vector<double>& ys,
                                                    const std::vector<double>& pows) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  const auto k = static_cast<Eigen::Index>(pows.size());
  Eigen::MatrixXd A(n, k);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) A(i, j) = std::pow(xs[i], pows[j]);
    b(i) = ys[i];
  }
  // Column scaling keeps the normal equations well conditioned.
  Eigen::VectorXd scale(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    scale(j) = A.col(j).norm();
    A.col(j) /= scale(j);
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  const double rms = std::sqrt((A * c - b).squaredNorm() / static_cast<double>(n));
  for (Eigen::Index j = 0; j < k; ++j) c(j) /= scale(j);
  return {c, rms};
}

}  // namespace detail

struct PrimeLimitOptions {
  // Near F = 3/2 the leading correction is s^g with g small; the ladder has
  // to reach far below the onset of the higher-order terms.
  double s_hi = 1e-3;
  double s_lo = 1e-8;
  int points = 24;
  /// Central-difference half step relative to s.
  double step = 0.02;
  /// Largest tolerated rms residual of the extrapolation fit, relative to
  /// the limit.
  double residual_tol = 1e-3;
  PeriodOptions period{};
};

/// lim_{s->0+} P'(s) for F in (1, 3/2).  P'(s) is sampled on a geometric
/// ladder and extrapolated by least squares on the correction exponents
/// {k + j g : k, j >= 0} with g = (3 - 2F)/(2F - 2) from the left end of the
/// well.
[[nodiscard]] inline double limit_p_prime(const PotentialModel& m,
                                          const PrimeLimitOptions& opt = {}) {
  const double F = m.params().F;
  if (!(F > 1.0 && F < 1.5)) throw DomainError("limit of P' requires F in (1, 3/2)");
  std::vector<double> ss, ps;
  for (int i = 0; i < opt.points; ++i) {
    const double s = opt.s_hi * std::pow(opt.s_lo / opt.s_hi, static_cast<double>(i) / (opt.points - 1));
    const double d = opt.step * s;
    // Fourth-order central difference.
    const double p2 = period_section(m, s + 2 * d, opt.period);
    const double p1 = period_section(m, s + d, opt.period);
    const double m1 = period_section(m, s - d, opt.period);
    const double m2 = period_section(m, s - 2 * d, opt.period);
    ss.push_back(s);
    ps.push_back((-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * d));
  }
  const double g = (3.0 - 2.0 * F) / (2.0 * F - 2.0);
  std::vector<double> pows{0.0};
  for (int k = 0; k <= 2; ++k) {
    for (int j = 0; j <= 8; ++j) {
      const double p = k + j * g;
      if (p <= 0.0 || p > 2.0) continue;
      bool dup = false;
      for (double q : pows) dup = dup || std::fabs(q - p) < 0.05;
      if (!dup) pows.push_back(p);
    }
  }
  std::sort(pows.begin(), pows.end());
  // Keep the system overdetermined.
  while (pows.size() > static_cast<std::size_t>(opt.points / 3)) pows.pop_back();
  const auto [c, rms] = detail::power_lsq(ss, ps, pows);
  const double lim = c(0);
  if (!(rms <= opt.residual_tol * std::fmax(std::fabs(lim), 1e-12))) {
    throw ExtrapolationError("P' ladder does not fit the correction model (rms " +
                             std::to_string(rms) + ")");
  }
  return lim;
}

struct PolycycleAsymptotics {
  double gamma_fit = 0.0;
  double delta_star_fit = 0.0;
  /// Energies bounding the fit window.
  double h_lo = 0.0;
  double h_hi = 0.0;
  /// Exponent and coefficient of the power term of the model
  /// T' = A e^g + B + C e; equals the leading term only when g < 0.
  double power_exponent = 0.0;
  double power_coeff = 0.0;
  double regular_part = 0.0;
  double residual = 0.0;
};

struct AsymptoticsOptions {
  /// Window of deficits e = h0 - h, as fractions of h0.
  double e_lo = 1e-9;
  double e_hi = 1e-4;
  int points = 30;
  double kappa = 0.1;
  double residual_tol = 1e-4;
  PeriodOptions period{};
};

/// Fits T'(h) ~ Delta* (h0 - h)^gamma near the outer boundary.
///
/// T' is sampled on a geometric ladder of deficits and fitted by
/// A e^g + B + C e with g found by a one-dimensional search (A, B, C by
/// linear least squares).  If g < 0 the power term leads: gamma = g and
/// Delta* = A.  Otherwise T' has a finite limit: gamma = 0 and Delta* = B.
[[nodiscard]] inline PolycycleAsymptotics fit_polycycle_asymptotics(
    const PotentialModel& m, const AsymptoticsOptions& opt = {}) {
  const double h0 = m.h0();
  const double e_lo = opt.e_lo * h0;
  const double e_hi = opt.e_hi * h0;
  if (!(e_lo > 0.0 && e_hi > e_lo && e_hi < h0)) throw FitError("degenerate fit window");
  // Below ~1e-13 h0 the level solver cannot separate neighbouring energies.
  if (e_lo * opt.kappa < 64.0 * std::numeric_limits<double>::epsilon() * h0) {
    throw FitError("fit window reaches below the energy resolution");
  }
  std::vector<double> es, ds;
  for (int i = 0; i < opt.points; ++i) {
    const double e = e_hi * std::pow(e_lo / e_hi, static_cast<double>(i) / (opt.points - 1));
    es.push_back(e);
    ds.push_back(period_derivative_deficit(m, e, opt.kappa, opt.period));
  }
  // Work in e / e_hi so the columns are O(1).
  std::vector<double> xs(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) xs[i] = es[i] / e_hi;
  double dscale = 0.0;
  for (double d : ds) dscale = std::max(dscale, std::fabs(d));
  if (dscale == 0.0) throw FitError("T' vanishes on the whole window");

  auto objective = [&](double g) {
    return detail::power_lsq(xs, ds, {g, 0.0, 1.0}).second;
  };
  // Coarse scan, then Brent on the best cell.
  double best_g = -0.95;
  double best_r = std::numeric_limits<double>::infinity();
  const double g_min = -0.99, g_max = 0.99;
  const int cells = 98;
  for (int i = 0; i <= cells; ++i) {
    const double g = g_min + (g_max - g_min) * i / cells;
    if (std::fabs(g) < 1e-3 || std::fabs(g - 1.0) < 1e-3) continue;
    const double r = objective(g);
    if (r < best_r) {
      best_r = r;
      best_g = g;
    }
  }
  const double cell = (g_max - g_min) / cells;
  double lo = std::max(g_min, best_g - cell);
  double hi = std::min(g_max, best_g + cell);
  std::uintmax_t iters = 200;
  const auto res = boost::math::tools::brent_find_minima(objective, lo, hi, 40, iters);
  const double g = res.first;
  const auto [c, rms] = detail::power_lsq(xs, ds, {g, 0.0, 1.0});

  PolycycleAsymptotics out;
  out.h_lo = h0 - e_hi;
  out.h_hi = h0 - e_lo;
  out.power_exponent = g;
  out.power_coeff = c(0) * std::pow(e_hi, -g);
  out.regular_part = c(1);
  out.residual = rms / dscale;
  if (out.residual > opt.residual_tol) {
    throw FitError("T' does not follow a power law plus regular part (residual " +
                   std::to_string(out.residual) + ")");
  }
  // A blow-up term that stays negligible on the whole window is noise from
  // the scan, not a leading power.
  const bool power_leads =
      g < 0.0 && std::fabs(c(0)) * std::pow(xs.back(), g) > 1e-3 * std::fabs(c(1));
  if (power_leads) {
    out.gamma_fit = g;
    out.delta_star_fit = out.power_coeff;
  } else {
    out.gamma_fit = 0.0;
    out.delta_star_fit = out.regular_part;
  }
  return out;
}

// --- counting -----------------------------------------------------------------

struct CriticalCount {
  int count = 0;
  /// Deficits h0 - h bracketing each detected sign change of T'.
  std::vector<std::pair<double, double>> brackets;
  /// A refinement sample disagreed with the coarse grid.
  bool unstable = false;
};

/// Sign changes of T' on [h_lo, h_hi], sampled geometrically in h0 - h so
/// that the neighbourhood of the outer boundary is resolved.  Each change is
/// confirmed on a finer sub-grid.
[[nodiscard]] inline CriticalCount count_critical_periods(const PotentialModel& m, double h_lo,
                                                          double h_hi, int n_samples,
                                                          const PeriodOptions& opt = {}) {
  const double h0 = m.h0();
  if (!(0.0 < h_lo && h_lo < h_hi && h_hi < h0)) throw DomainError("need 0 < h_lo < h_hi < h0");
  CriticalCount out;
  if (n_samples < 2) return out;
  const double e_hi = h0 - h_lo;
  const double e_lo = h0 - h_hi;
  auto deriv = [&](double e) { return period_derivative_deficit(m, e, 0.05, opt); };
  std::vector<double> es, ds;
  for (int i = 0; i < n_samples; ++i) {
    const double e = e_hi * std::pow(e_lo / e_hi, static_cast<double>(i) / (n_samples - 1));
    es.push_back(e);
    ds.push_back(deriv(e));
  }
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    if ((ds[i] > 0.0) == (ds[i + 1] > 0.0)) continue;
    // Refine: the sign must change exactly once on a finer sub-grid.
    constexpr int sub = 6;
    int changes = 0;
    double prev = ds[i];
    for (int j = 1; j <= sub; ++j) {
      const double e = es[i] * std::pow(es[i + 1] / es[i], static_cast<double>(j) / sub);
      const double d = (j == sub) ? ds[i + 1] : deriv(e);
      if ((d > 0.0) != (prev > 0.0)) ++changes;
      prev = d;
    }
    if (changes != 1) out.unstable = true;
    out.count += changes;
    out.brackets.emplace_back(es[i + 1], es[i]);
  }
  return out;
}

}  // namespace loudcrit

#endif  // LOUDCRIT_PERIOD_HPP
