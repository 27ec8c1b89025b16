#ifndef LOUDCRIT_ASYMPTOTICS_HPP
#define LOUDCRIT_ASYMPTOTICS_HPP

// Quantifiers: numeric log-log estimation and the closed-form catalog used by
// the decision procedure.
//
// Convention.  f is quantifiable at a finite endpoint b by alpha with limit l
// when f(x) |b - x|^alpha -> l != 0, and at +-inf when f(x) |x|^{-alpha} -> l.
// Left-endpoint limits in the catalog are stored against the distance
// u - (-1/F), not against F u + 1.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "loudcrit/chebyshev.hpp"
#include "loudcrit/errors.hpp"
#include "loudcrit/potential_form.hpp"

namespace loudcrit {

enum class EndpointKind { Finite, PlusInfinity, MinusInfinity };

struct Endpoint {
  EndpointKind kind = EndpointKind::Finite;
  double value = 0.0;

  static Endpoint finite(double b) { return {EndpointKind::Finite, b}; }
  static Endpoint plus_infinity() {
    return {EndpointKind::PlusInfinity, std::numeric_limits<double>::infinity()};
  }
  static Endpoint minus_infinity() {
    return {EndpointKind::MinusInfinity, -std::numeric_limits<double>::infinity()};
  }
};

struct Quantifier {
  Endpoint endpoint;
  double alpha = 0.0;
  double limit = 0.0;
  /// Half-width of a two-sigma band on alpha from the regression.
  double alpha_band = 0.0;
  /// |slope(first decade) - slope(last decade)|.
  double drift = 0.0;
};

struct FitWindow {
  double decades = 4.0;
  /// Closest distance to a finite endpoint (the window ends here).
  double nearest = 1e-8;
  /// First abscissa for an infinite endpoint (the window starts here).
  double farthest_start = 1e4;
  int per_decade = 12;
  double drift_tol = 1e-3;
};

namespace detail {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double se = 0.0;
};

inline LineFit line_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = m * sxx - sx * sx;
  LineFit out;
  out.slope = (m * sxy - sx * sy) / den;
  out.intercept = (sy - out.slope * sx) / m;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (out.intercept + out.slope * xs[i]);
    ss += r * r;
  }
  out.se = std::sqrt(ss / std::fmax(m - 2.0, 1.0) * m / den);
  return out;
}

}  // namespace detail

/// Fits the quantifier of f at an endpoint.  For a finite endpoint f is
/// called with the distance d > 0 to it; for an infinite one with |x|.
template <class Fn>
Quantifier estimate_quantifier(const Fn& f, const Endpoint& ep, const FitWindow& w = {}) {
  if (!(w.decades >= 1.0) || w.per_decade < 3) throw FitError("fit window too small");
  const bool finite = ep.kind == EndpointKind::Finite;
  const int npts = static_cast<int>(std::lround(w.decades * w.per_decade)) + 1;
  // Abscissae ordered from far to near the endpoint.
  std::vector<double> ls, lf;
  double sign = 0.0;
  for (int i = 0; i < npts; ++i) {
    const double frac = static_cast<double>(i) / (npts - 1);
    const double t = finite ? w.nearest * std::pow(10.0, w.decades * (1.0 - frac))
                            : w.farthest_start * std::pow(10.0, w.decades * frac);
    const double v = f(t);
    if (!std::isfinite(v) || v == 0.0) throw FitError("non-finite or zero sample in fit window");
    const double s = std::copysign(1.0, v);
    if (sign != 0.0 && s != sign) throw FitError("sign change inside fit window");
    sign = s;
    ls.push_back(std::log(t));
    lf.push_back(std::log(std::fabs(v)));
  }
  const detail::LineFit all = detail::line_fit(ls, lf);
  const auto per = static_cast<std::size_t>(w.per_decade) + 1;
  const std::vector<double> l0(ls.begin(), ls.begin() + per), f0(lf.begin(), lf.begin() + per);
  const std::vector<double> l1(ls.end() - per, ls.end()), f1(lf.end() - per, lf.end());
  const detail::LineFit first = detail::line_fit(l0, f0);
  const detail::LineFit last = detail::line_fit(l1, f1);

  Quantifier q;
  q.endpoint = ep;
  q.drift = std::fabs(first.slope - last.slope);
  if (q.drift > w.drift_tol) {
    throw FitError("slope drifts by " + std::to_string(q.drift) + " across the window");
  }
  q.alpha = finite ? -all.slope : all.slope;
  q.alpha_band = 2.0 * all.se;
  // Limit from the decade closest to the endpoint.
  double acc = 0.0;
  for (std::size_t i = 0; i < l1.size(); ++i) acc += f1[i] - all.slope * l1[i];
  q.limit = sign * std::exp(acc / static_cast<double>(l1.size()));
  return q;
}

/// Closed-form exponents and limits: h0 - V at both ends (beta, b) and the
/// Wronskian-quotient function of the current step (alpha, a).
struct QuantifierCatalog {
  int n = 0;
  NuVector nus;
  double beta_l = 0.0;
  double b_l = 0.0;
  double beta_r = 0.0;
  double b_r = 0.0;
  double alpha_l = 0.0;
  double a_l = 0.0;
  double alpha_r = 0.0;
  double a_r = 0.0;
  /// a_l vanishes identically (F = 2).
  bool a_l_vanishes = false;
  /// For n = 1: the product-form closed expression of a_l, which agrees with
  /// a_l in sign but not in magnitude (kept for the sign check only).
  double a_l_printed = 0.0;
};

namespace detail {

inline void fill_beta(QuantifierCatalog& c, const PotentialModel& m) {
  const double D = m.params().D;
  const double F = m.params().F;
  c.beta_l = (2.0 - 2.0 * F) / F;
  c.b_l = D * std::pow(F, 2.0 - 2.0 / F) / (2.0 * (1.0 - F));
  c.beta_r = -1.0;
  c.b_r = m.v_derivatives(m.u_right()).d1;
}

}  // namespace detail

/// Step n = 0: the function is (h0 - V) V^{1/2} R.
[[nodiscard]] inline QuantifierCatalog catalog_n0(const PotentialModel& m) {
  const double D = m.params().D;
  const double F = m.params().F;
  const double h0 = m.h0();
  QuantifierCatalog c;
  detail::fill_beta(c, m);
  c.alpha_l = 1.0 - 2.0 / F;
  c.a_l = (F - 2.0) * std::pow(h0, 1.5) * std::pow(F, 2.0 / F - 1.0) / (D * (F - 1.0));
  c.a_l_vanishes = (F == 2.0);
  c.alpha_r = -1.0;
  const PotentialPoint pr{m.u_right(), m.z_right()};
  c.a_r = m.r_value(pr) * c.b_r * std::sqrt(h0);
  return c;
}

/// Step n = 1 with exponent nu: the function is psi_big(., nu).
[[nodiscard]] inline QuantifierCatalog catalog_n1(const PotentialModel& m, double nu) {
  const double D = m.params().D;
  const double F = m.params().F;
  const double h0 = m.h0();
  if (std::fabs(nu + 2.0) < 1e-12) throw DegenerateNu("nu = -2 makes the right limit vanish");
  if (std::fabs(nu - (F - 2.0) / (F - 1.0)) < 1e-12) {
    throw DegenerateNu("nu = (F-2)/(F-1) cancels the leading left monomial");
  }
  QuantifierCatalog c;
  c.n = 1;
  c.nus = {nu};
  detail::fill_beta(c, m);
  // Psi ~ a (F u + 1)^E at -1/F, with F u + 1 = F d.  a follows from the
  // leading monomial c z^{6-2F} of psi together with V -> h0,
  // V' ~ D z^{2-F} and h0 - V ~ D z^{2-2F}/(2-2F).
  const double E = (4.0 + nu - F * (3.0 + nu)) / F;
  const double lead = -(F - 2.0) * (F - 2.0 - nu * (F - 1.0)) * D * D * D * (1.0 + D - F) *
                      (1.0 + D - F) /
                      (2.0 * F * F * std::pow(F - 1.0, 3.0) * (1.0 - 2.0 * F) * (1.0 - 2.0 * F));
  const double a = lead / (2.0 * std::sqrt(h0) * std::pow(D, 5.0)) *
                   std::pow(2.0 * (1.0 - F) * h0 / D, 0.5 * nu);
  c.a_l_printed = -(F - 2.0) * (F - 2.0 - nu * (F - 1.0)) * std::pow(-D, 0.5 * nu) *
                  std::pow(F - 1.0, nu - 2.5) * std::pow(F, 0.5 * (nu + 1.0)) *
                  std::pow(F - D - 1.0, 0.5 * (nu + 3.0)) *
                  std::pow(4.0 * F - 2.0, 0.5 * (nu - 3.0)) * std::pow(F, E);
  c.alpha_l = -E;
  c.a_l = a * std::pow(F, E);
  c.a_l_vanishes = (F == 2.0);
  c.alpha_r = 0.5 * nu;
  const PotentialPoint pr{m.u_right(), m.z_right()};
  c.a_r = -0.5 * (nu + 2.0) * m.r_value(pr) * std::pow(h0, 0.5 * (nu + 1.0)) *
          std::pow(c.b_r, -0.5 * nu);
  return c;
}

enum class XiSide { Left, Right, Tie };

struct XiResult {
  double xi = 0.0;
  XiSide side = XiSide::Tie;
  double ratio_l = 0.0;
  double ratio_r = 0.0;
  /// a_r b_r^{-ratio_r} + (-1)^{n(n+1)/2} a_l b_l^{-ratio_l}, evaluated on ties.
  double tie_sum = 0.0;
};

/// xi = -min(alpha_l/beta_l, alpha_r/beta_r) - sum(nu)/2 - n(n+1)/2 + 1.
[[nodiscard]] inline XiResult xi_value(const QuantifierCatalog& c, double tie_tol = 1e-9) {
  XiResult r;
  r.ratio_l = c.alpha_l / c.beta_l;
  r.ratio_r = c.alpha_r / c.beta_r;
  if (!std::isfinite(r.ratio_l) || !std::isfinite(r.ratio_r)) {
    throw DomainError("quantifier ratios must be finite");
  }
  const int n = static_cast<int>(c.nus.size());
  double nu_sum = 0.0;
  for (double v : c.nus) nu_sum += v;
  const double lo = std::fmin(r.ratio_l, r.ratio_r);
  r.xi = -lo - 0.5 * nu_sum - 0.5 * n * (n + 1) + 1.0;
  if (std::fabs(r.ratio_l - r.ratio_r) <= tie_tol * std::fmax(1.0, std::fabs(lo))) {
    r.side = XiSide::Tie;
    const double sgn = ((n * (n + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    const double tr = c.a_r * std::pow(c.b_r, -r.ratio_r);
    const double tl = c.a_l * std::pow(c.b_l, -r.ratio_l);
    r.tie_sum = tr + sgn * tl;
    const double scale = std::fmax(std::fabs(tr), std::fabs(tl));
    if (std::fabs(r.tie_sum) < 1e-10 * std::fmax(scale, 1e-300)) {
      throw TieDegeneracyError("leading terms cancel on the tie");
    }
  } else {
    r.side = (r.ratio_l < r.ratio_r) ? XiSide::Left : XiSide::Right;
  }
  return r;
}

/// Piecewise closed forms of xi for the two steps used on the Loud family.
[[nodiscard]] inline double xi_n0_closed(double F) {
  return F <= 4.0 / 3.0 ? 0.0 : (3.0 * F - 4.0) / (2.0 * (F - 1.0));
}
[[nodiscard]] inline double xi_n1_closed(double F) {
  return -std::fmin((2.0 * F - 3.0) / (2.0 * (1.0 - F)), 0.5) + 0.5;
}

}  // namespace loudcrit

#endif  // LOUDCRIT_ASYMPTOTICS_HPP
