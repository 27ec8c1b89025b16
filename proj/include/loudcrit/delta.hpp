#ifndef LOUDCRIT_DELTA_HPP
#define LOUDCRIT_DELTA_HPP

// Bifurcation coefficient Delta(mu) = lim_{s->0+} P'(s; mu) for F in (1, 3/2)
// and its zero set D = G(F).

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "loudcrit/errors.hpp"
#include "loudcrit/loud_core.hpp"
#include "loudcrit/quadrature.hpp"

namespace loudcrit {

struct DeltaOptions {
  QuadOptions quad{1e-11, 1e-12, 4000};
};

/// The bracketed integral I(mu) in
///   Delta = -(2a)^{-1/2} / ((p2 - p1)(1 - p1)) (2 - I).
/// Split at u = 1/2.  On [0, 1/2] the u^{2-2F} singularity is removed by
/// u = s^k with k = 1/(3 - 2F); on [1/2, 1] the substitution 1 - u = t^2
/// leaves 2 expm1(...)/t^2, bounded at t = 0.
[[nodiscard]] inline QuadResult delta_integral(const Params& mu, const DeltaOptions& opt = {}) {
  const double F = mu.F;
  const ConicData cd = conic_data(mu);
  const double r = (1.0 - cd.p2) / (1.0 - cd.p1);
  const double beta = 2.0 - 2.0 * F;
  const double gam = 2.0 * F - 1.0;

  // int_0^{1/2} u^beta (1 - r + r u)^gam (1-u)^{-3/2} du
  const double k = 1.0 / (beta + 1.0);
  const double s_hi = std::pow(0.5, 1.0 / k);
  auto left = [&](double s) {
    const double u = std::pow(s, k);
    return k * std::pow(1.0 - r + r * u, gam) * std::pow(1.0 - u, -1.5);
  };
  const QuadResult a = integrate_adaptive(left, 0.0, s_hi, opt.quad);
  const double sub = 2.0 * (std::sqrt(2.0) - 1.0);

  auto right = [&](double t) {
    const double t2 = t * t;
    return 2.0 * std::expm1(beta * std::log1p(-t2) + gam * std::log1p(-r * t2)) / t2;
  };
  const QuadResult b = integrate_adaptive(right, 0.0, std::sqrt(0.5), opt.quad);

  QuadResult out;
  out.value = a.value - sub + b.value;
  out.abs_error = a.abs_error + b.abs_error;
  out.evaluations = a.evaluations + b.evaluations;
  out.converged = a.converged && b.converged;
  return out;
}

/// Delta(mu); requires mu in Lambda with F in (1, 3/2).
[[nodiscard]] inline double delta(const Params& mu, const DeltaOptions& opt = {}) {
  if (!(mu.F > 1.0 && mu.F < 1.5)) throw DomainError("Delta is defined for F in (1, 3/2)");
  if (!in_lambda(mu)) throw DomainError("Delta requires mu in Lambda");
  const ConicData cd = conic_data(mu);
  const QuadResult I = delta_integral(mu, opt);
  if (!I.converged) throw QuadratureError("Delta integral did not converge");
  return (-1.0 / std::sqrt(2.0 * cd.a)) / ((cd.p2 - cd.p1) * (1.0 - cd.p1)) * (2.0 - I.value);
}

struct CurvePoint {
  double F = 0.0;
  double G = 0.0;
  double residual = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  /// F lies within the guard band of an endpoint of (1, 3/2).
  bool low_confidence = false;
  /// More than one sign change of Delta(., F) was seen on the scan.
  bool multiple_sign_changes = false;
  /// Non-empty when the point could not be computed.
  std::string error;
};

struct CurveOptions {
  double tol = 1e-12;
  double edge = 1e-6;
  double guard = 1e-4;
  int scan_points = 24;
  DeltaOptions delta{};
};

/// Zero of D -> Delta(D, F) on (-F + edge, -1/2 - edge).
[[nodiscard]] inline CurvePoint curve_g(double F, const CurveOptions& opt = {}) {
  if (!(F > 1.0 && F < 1.5)) throw DomainError("G(F) is defined for F in (1, 3/2)");
  CurvePoint cp;
  cp.F = F;
  cp.low_confidence = (F < 1.0 + opt.guard) || (F > 1.5 - opt.guard);
  const double lo = -F + opt.edge;
  const double hi = -0.5 - opt.edge;
  auto fn = [&](double D) { return delta({D, F}, opt.delta); };

  // Coarse scan for sign changes.
  std::vector<double> ds, vs;
  for (int i = 0; i <= opt.scan_points; ++i) {
    const double D = lo + (hi - lo) * i / opt.scan_points;
    ds.push_back(D);
    vs.push_back(fn(D));
  }
  int changes = 0;
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    if ((vs[i] > 0.0) != (vs[i + 1] > 0.0) || vs[i] == 0.0) {
      ++changes;
      if (!first) first = i;
    }
  }
  if (!first) {
    std::ostringstream os;
    os << "Delta(., " << F << ") has no sign change on (" << lo << ", " << hi << ")";
    throw NoBracketError(os.str());
  }
  cp.multiple_sign_changes = changes > 1;
  double a = ds[*first];
  double b = ds[*first + 1];
  double fa = vs[*first];
  double fb = vs[*first + 1];
  if (fa == 0.0) {
    b = a;
  } else {
    std::uintmax_t iters = 100;
    const auto r = boost::math::tools::toms748_solve(
        fn, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50), iters);
    a = r.first;
    b = r.second;
  }
  cp.bracket_lo = a;
  cp.bracket_hi = b;
  const double fa2 = fn(a);
  const double fb2 = fn(b);
  if (std::fabs(fa2) <= std::fabs(fb2)) {
    cp.G = a;
    cp.residual = std::fabs(fa2);
  } else {
    cp.G = b;
    cp.residual = std::fabs(fb2);
  }
  return cp;
}

/// curve_g on each grid node in order; failures are carried in the record.
[[nodiscard]] inline std::vector<CurvePoint> tabulate_curve(const std::vector<double>& grid,
                                                            const CurveOptions& opt = {}) {
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double F : grid) {
    try {
      out.push_back(curve_g(F, opt));
    } catch (const Error& e) {
      CurvePoint cp;
      cp.F = F;
      cp.G = std::nan("");
      cp.residual = std::nan("");
      cp.low_confidence = true;
      cp.error = e.what();
      out.push_back(cp);
    }
  }
  return out;
}

}  // namespace loudcrit

#endif  // LOUDCRIT_DELTA_HPP
