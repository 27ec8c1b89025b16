#ifndef LOUDCRIT_VERIFICATION_HPP
#define LOUDCRIT_VERIFICATION_HPP

// Cross-checks shared by `loudcrit verify` and the acceptance runner.  Each
// check returns a pass flag and a one-line detail; tolerances are pinned
// here and nowhere else.

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loudcrit/asymptotics.hpp"
#include "loudcrit/chebyshev.hpp"
#include "loudcrit/criticality.hpp"
#include "loudcrit/delta.hpp"
#include "loudcrit/errors.hpp"
#include "loudcrit/loud_core.hpp"
#include "loudcrit/ode.hpp"
#include "loudcrit/period.hpp"
#include "loudcrit/potential_form.hpp"

namespace loudcrit::verify {

namespace tol {
inline constexpr double identity = 1e-12;
inline constexpr double conjugacy_rel = 1e-6;
inline constexpr double exponent_rel = 0.02;
inline constexpr double limit_rel = 0.05;
inline constexpr double psi_rel = 1e-5;
inline constexpr double l_anchor = 1e-10;
inline constexpr double delta_vs_prime_rel = 0.01;
inline constexpr double curve_residual = 1e-10;
inline constexpr double n1_of_one = 1e-9;
inline constexpr double gamma_rel = 0.05;
inline constexpr double grid_budget_s = 600.0;
}  // namespace tol

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline CheckResult timed(int criterion, const char* name,
                         const std::function<bool(std::ostringstream&)>& body) {
  CheckResult r;
  r.criterion = criterion;
  r.name = name;
  std::ostringstream os;
  os.precision(6);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.pass = body(os);
  } catch (const std::exception& e) {
    r.pass = false;
    os << " error: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.detail = os.str();
  return r;
}

inline double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace detail

// 1. V(0) = 0, V'(0) = 0, V''(0) = 1 on a 30 x 30 grid; phi(phi^{-1}(u)) = u.
inline CheckResult identities() {
  return detail::timed(1, "potential identities at the center", [](std::ostringstream& os) {
    double worst_v = 0.0, worst_phi = 0.0;
    int nodes = 0;
    for (double F : linspace(1.02, 2.48, 30)) {
      for (double D : linspace(-2.45, -0.55, 30)) {
        const Params mu{D, F};
        if (!in_lambda(mu)) continue;
        ++nodes;
        const PotentialModel m(mu);
        const double s = std::fmax(1.0, m.h0());
        const auto& c = m.derivatives_at_center();
        worst_v = std::fmax(worst_v, std::fabs(m.h0() - m.deficit_at_z(1.0)) / s);
        worst_v = std::fmax(worst_v, std::fabs(m.poly_v1(1.0)));
        worst_v = std::fmax(worst_v, std::fabs(m.poly_v2(1.0) - 1.0));
        worst_v = std::fmax(worst_v, std::fabs(c[0]) / s);
        worst_v = std::fmax(worst_v, std::fabs(c[1]));
        worst_v = std::fmax(worst_v, std::fabs(c[2] - 1.0));
        for (double t : {-0.9, -0.5, -0.1, 0.05, 0.3, 0.7, 0.95}) {
          const double u = t < 0 ? -t * m.u_left() : t * m.u_right();
          const double back = phi(phi_inv(u, F), F);
          worst_phi = std::fmax(worst_phi, std::fabs(back - u) / std::fmax(1.0, std::fabs(u)));
        }
      }
    }
    os << nodes << " nodes; max |V-identity| " << worst_v << ", max |phi o phi^-1 - id| "
       << worst_phi << " (tol " << tol::identity << ")";
    return nodes > 0 && worst_v <= tol::identity && worst_phi <= tol::identity;
  });
}

// 2. Loud ODE period through (p1 - s, 0) against the quadrature period.
inline CheckResult conjugacy() {
  return detail::timed(2, "conjugacy of Loud and potential periods", [](std::ostringstream& os) {
    double worst = 0.0;
    for (const Params mu : {Params{-0.6, 1.3}, Params{-1.0, 1.7}, Params{-1.5, 2.4}}) {
      const PotentialModel m(mu);
      for (double s : {0.05, 0.1, 0.2}) {
        const double ode = loud_orbit_period(mu, s).time;
        worst = std::fmax(worst, detail::rel_err(period_section(m, s), ode));
      }
    }
    os << "max relative difference " << worst << " (tol " << tol::conjugacy_rel << ")";
    return worst <= tol::conjugacy_rel;
  });
}

inline const std::vector<Params>& catalog_sample() {
  static const std::vector<Params> s{
      {-0.6, 1.3}, {-0.7, 1.4}, {-1.0, 1.7}, {-1.5, 2.4}, {-0.9, 1.2}};
  return s;
}

// Left-end corrections decay like d^{(2F-2)/F}; the window must sit far
// closer to u_left than on the right.
inline FitWindow left_window() {
  FitWindow w;
  w.nearest = 1e-40;
  return w;
}

// 3. n = 0 catalog against log-log fits.
inline CheckResult quantifiers() {
  return detail::timed(3, "n=0 quantifier catalog vs fits", [](std::ostringstream& os) {
    double worst_e = 0.0, worst_l = 0.0;
    for (const Params& mu : catalog_sample()) {
      const PotentialModel m(mu);
      const QuantifierCatalog c = catalog_n0(m);
      auto defl = [&](double d) { return m.deficit(m.at_left_distance(d)); };
      auto defr = [&](double d) { return m.deficit(m.at_right_distance(d)); };
      auto wq = [&](const PotentialPoint& p) {
        return m.deficit(p) * std::sqrt(m.derivatives(p).v) * m.r_value(p);
      };
      auto fl = [&](double d) { return wq(m.at_left_distance(d)); };
      auto fr = [&](double d) { return wq(m.at_right_distance(d)); };
      const Endpoint L = Endpoint::finite(m.u_left()), R = Endpoint::finite(m.u_right());
      const Quantifier q[4] = {estimate_quantifier(defl, L, left_window()),
                               estimate_quantifier(defr, R, FitWindow{}),
                               estimate_quantifier(fl, L, left_window()),
                               estimate_quantifier(fr, R, FitWindow{})};
      const double ce[4] = {c.beta_l, c.beta_r, c.alpha_l, c.alpha_r};
      const double cl[4] = {c.b_l, c.b_r, c.a_l, c.a_r};
      for (int i = 0; i < 4; ++i) {
        worst_e = std::fmax(worst_e, detail::rel_err(q[i].alpha, ce[i]));
        worst_l = std::fmax(worst_l, detail::rel_err(q[i].limit, cl[i]));
      }
    }
    os << "5 mu x 8 entries; max exponent rel err " << worst_e << " (tol " << tol::exponent_rel
       << "), max limit rel err " << worst_l << " (tol " << tol::limit_rel << ")";
    return worst_e <= tol::exponent_rel && worst_l <= tol::limit_rel;
  });
}

// 4. Psi closed form against the Wronskian definition; nu = -1 exponents.
inline CheckResult psi_closed_form() {
  return detail::timed(4, "Psi closed form vs Wronskian", [](std::ostringstream& os) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const auto& mus = catalog_sample();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Params mu = mus[static_cast<std::size_t>(i) % mus.size()];
      const PotentialModel m(mu);
      double nu = -2.5 + 4.0 * U(rng);
      if (std::fabs(nu + 2.0) < 0.1) nu += 0.3;
      const double t = 0.05 + 0.85 * U(rng);
      const double u = (i % 2) ? t * m.u_right() : t * m.u_left();
      Differentiable f1([&](double x) {
        const PotentialPoint p = m.at_u(x);
        return std::pow(m.derivatives(p).v / m.deficit(p), 0.5 * nu);
      });
      Differentiable f2([&](double x) {
        const PotentialPoint p = m.at_u(x);
        return m.deficit(p) * std::sqrt(m.derivatives(p).v) * m.r_value(p);
      });
      const double w = wronskian({f1, f2}, u) / m.v_derivatives(u).d1;
      worst = std::fmax(worst, detail::rel_err(w, m.psi_big(u, nu)));
    }
    double worst_e = 0.0;
    for (const Params& mu : mus) {
      const PotentialModel m(mu);
      const QuantifierCatalog c = catalog_n1(m, -1.0);
      auto pl = [&](double d) { return m.psi_big_at(m.at_left_distance(d), -1.0); };
      auto pr = [&](double d) { return m.psi_big_at(m.at_right_distance(d), -1.0); };
      const Quantifier ql = estimate_quantifier(pl, Endpoint::finite(m.u_left()), left_window());
      const Quantifier qr = estimate_quantifier(pr, Endpoint::finite(m.u_right()), FitWindow{});
      worst_e = std::fmax(worst_e, detail::rel_err(ql.alpha, c.alpha_l));
      worst_e = std::fmax(worst_e, detail::rel_err(qr.alpha, c.alpha_r));
    }
    os << "20 (u,nu) points, max rel err " << worst << " (tol " << tol::psi_rel
       << "); nu=-1 exponents max rel err " << worst_e << " (tol " << tol::exponent_rel << ")";
    return worst <= tol::psi_rel && worst_e <= tol::exponent_rel;
  });
}

// 5. L(1 - p1) > 0 on a 100 x 100 grid of the window F <= 5/2, D >= -5/2
// clipped to Lambda; anchors at D = -F and D = -1/2.
inline CheckResult l_positivity() {
  return detail::timed(5, "positivity of L at the outer boundary", [](std::ostringstream& os) {
    int nodes = 0, bad = 0;
    double min_l = std::numeric_limits<double>::infinity();
    double bad_f_lo = 10.0, bad_d_lo = 0.0;
    const auto fs = linspace(1.015, 2.5, 100);
    for (double F : fs) {
      // D spans (-F, -1/2) at this F; 100 interior nodes.
      const double lo = std::fmax(-2.5, -F);
      const double pad = 0.5 * (-0.5 - lo) / 100.0;
      for (double D : linspace(lo + pad, -0.5 - pad, 100)) {
        const Params mu{D, F};
        if (!in_lambda(mu)) continue;
        ++nodes;
        const double l = l_eval(mu, 1.0 - conic_data(mu).p1);
        min_l = std::fmin(min_l, l);
        if (!(l > 0.0)) {
          ++bad;
          bad_f_lo = std::fmin(bad_f_lo, F);
          bad_d_lo = std::fmin(bad_d_lo, D);
        }
      }
    }
    double worst_anchor = 0.0;
    for (double F : {1.1, 1.3, 1.45, 1.7, 2.2}) {
      const Params edge{-F, F};
      worst_anchor = std::fmax(worst_anchor,
                               std::fabs(l_eval(edge, 1.0 - conic_data(edge).p1) - 1.0 / (F * F)));
      const Params half{-0.5, F};
      const double closed = (std::pow(F, F) * std::pow(F - 1.0, 1.0 - F) + 2.0 - 3.0 * F) /
                            (4.0 * F * F * (F - 1.0));
      worst_anchor = std::fmax(worst_anchor,
                               std::fabs(l_eval(half, 1.0 - conic_data(half).p1) - closed));
    }
    os << nodes << " nodes, " << bad << " non-positive, min L " << min_l;
    if (bad > 0) os << " (failures confined to F >= " << bad_f_lo << ", D >= " << bad_d_lo << ")";
    os << "; anchor max err " << worst_anchor << " (tol " << tol::l_anchor << ")";
    return nodes == 10000 && bad == 0 && worst_anchor <= tol::l_anchor;
  });
}

// 6. lim P'(s) against Delta; Delta changes sign across the curve.
inline CheckResult delta_vs_period() {
  return detail::timed(6, "Delta vs lim P'(s) and sign change", [](std::ostringstream& os) {
    double worst = 0.0;
    for (const Params mu : {Params{-0.6, 1.3}, Params{-1.2, 1.4}, Params{-0.7, 1.2},
                            Params{-0.9, 1.15}, Params{-1.3, 1.44}}) {
      const PotentialModel m(mu);
      worst = std::fmax(worst, detail::rel_err(limit_p_prime(m), delta(mu)));
    }
    bool flips = true;
    for (double F : {1.35, 1.40, 1.45}) {
      const CurvePoint cp = curve_g(F);
      const double lo = delta({cp.G - 1e-3, F});
      const double hi = delta({cp.G + 1e-3, F});
      flips = flips && ((lo > 0.0) != (hi > 0.0));
    }
    os << "max rel diff " << worst << " (tol " << tol::delta_vs_prime_rel << "); sign change at "
       << "F in {1.35,1.40,1.45}: " << (flips ? "yes" : "no");
    return worst <= tol::delta_vs_prime_rel && flips;
  });
}

// 7. The curve G on (1.34, 1.49) and its trend toward both ends.
inline CheckResult curve() {
  return detail::timed(7, "curve D = G(F)", [](std::ostringstream& os) {
    int inside = 0;
    double worst_res = 0.0;
    const auto grid = linspace(1.34, 1.49, 16);
    for (const CurvePoint& cp : tabulate_curve(grid)) {
      if (!cp.error.empty()) throw NoBracketError(cp.error);
      if (cp.G > -cp.F && cp.G < -0.5) ++inside;
      worst_res = std::fmax(worst_res, cp.residual);
    }
    const std::vector<double> trend{1.001, 1.02, 1.1, 1.2, 1.3, 1.4, 1.45, 1.49};
    std::vector<double> gs;
    for (double F : trend) gs.push_back(curve_g(F).G);
    bool ordered = true;
    for (std::size_t i = 0; i + 1 < gs.size(); ++i) ordered = ordered && gs[i] > gs[i + 1];
    // Closer to -1/2 as F -> 1 and closer to -3/2 as F -> 3/2.
    ordered = ordered && std::fabs(gs[0] + 0.5) < std::fabs(gs[1] + 0.5);
    ordered = ordered && std::fabs(gs.back() + 1.5) < std::fabs(gs[gs.size() - 2] + 1.5);
    os << inside << "/16 inside (-F,-1/2), max residual " << worst_res << " (tol "
       << tol::curve_residual << "); ordering G(1.001)=" << gs.front() << " > ... > G(1.49)="
       << gs.back() << ": " << (ordered ? "yes" : "no");
    return inside == 16 && worst_res < tol::curve_residual && ordered;
  });
}

// 8. Momenta: N1[1], divergence of N2[1], one-step recursion on f_even.
inline CheckResult momenta() {
  return detail::timed(8, "momentum machinery", [](std::ostringstream& os) {
    MomentumOptions o;
    o.quad = {1e-13, 1e-13, 4000};
    const MomentumValue one = momentum(1, [](double) { return 1.0; }, o);
    const double e1 = std::fabs(one.value - std::numbers::pi / 2.0);
    bool diverges = false;
    try {
      (void)momentum(2, [](double) { return 1.0; });
    } catch (const DivergenceError&) {
      diverges = true;
    }
    double worst = 0.0;
    bool rec_ok = true;
    for (const Params mu : {Params{-0.6, 1.3}, Params{-1.2, 1.4}}) {
      const PotentialModel m(mu);
      auto f = [&](double x, double xc) { return m.f_even(x, xc); };
      auto fd = [&](double x, double xc) { return m.f_even_derivative(x, xc); };
      MomentumOptions mo;
      mo.quad = {1e-11, 1e-10, 4000};
      for (double nu : {0.0, 0.5}) {
        const RecursionSides s = momentum_recursion_1(nu, f, fd, 1, mo);
        const double gap = std::fabs(s.lhs.value - s.rhs.value);
        const double band = 5.0 * (s.lhs.abs_error + s.rhs.abs_error) + 1e-9 * std::fabs(s.rhs.value);
        worst = std::fmax(worst, gap / std::fabs(s.rhs.value));
        rec_ok = rec_ok && gap <= band;
      }
    }
    const bool zero_coeff = recursion_coefficient({-1.0}, 1) == 0.0;
    os << "|N1[1]-pi/2| " << e1 << " (tol " << tol::n1_of_one << "); N2[1] divergent: "
       << (diverges ? "yes" : "no") << "; recursion max rel gap " << worst << " within band: "
       << (rec_ok ? "yes" : "no") << "; nu=-1 coefficient zero: " << (zero_coeff ? "yes" : "no");
    return e1 <= tol::n1_of_one && diverges && rec_ok && zero_coeff;
  });
}

// 9. Classification of a 50 x 50 grid with the curve and the lines marked.
inline CheckResult classify_grid(int grid_n = 50) {
  return detail::timed(9, "classification grid", [grid_n](std::ostringstream& os) {
    const auto t0 = std::chrono::steady_clock::now();
    const ClassifyOptions opt;
    const auto recs = scan_lambda(Window{}, grid_n, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int grid_lambda = 0, grid_regular = 0, guarded = 0, curve_nodes = 0, curve_exact = 0;
    int line2 = 0, line2_ok = 0, line32 = 0, line32_ok = 0;
    std::ostringstream bad;
    for (const ScanRecord& r : recs) {
      const CriticalityVerdict& v = r.verdict;
      const double F = v.mu.F, D = v.mu.D;
      switch (r.kind) {
        case NodeKind::Grid:
          if (!in_lambda(v.mu)) break;
          if (std::fabs(F - 2.0) < opt.guard_F2 || std::fabs(F - 1.5) < opt.guard_F32 ||
              std::fabs(D + 0.5) < opt.guard_D_half) {
            ++guarded;
            break;
          }
          ++grid_lambda;
          if (v.regular()) {
            ++grid_regular;
          } else if (bad.tellp() < 200) {
            bad << " (" << D << "," << F << "):" << to_string(v.case_taken) << "/" << to_string(v.reason);
          }
          break;
        case NodeKind::Curve:
          if (F > 4.0 / 3.0 && F < 1.5) {
            ++curve_nodes;
            if (v.bound == 1 && v.lower_bound == 1) ++curve_exact;
          }
          break;
        case NodeKind::LineF2:
          if (!in_lambda(v.mu) || std::fabs(D + 0.5) < opt.guard_D_half) break;
          ++line2;
          if (v.reason == Reason::FEq2) ++line2_ok;
          break;
        case NodeKind::LineF32:
          if (!in_lambda(v.mu) || std::fabs(D + 0.5) < opt.guard_D_half) break;
          ++line32;
          if (v.reason == Reason::FEq32Log) ++line32_ok;
          break;
      }
    }
    os << grid_regular << "/" << grid_lambda << " off-curve grid nodes regular (" << guarded
       << " in guard bands); " << curve_exact << "/" << curve_nodes
       << " curve nodes with F in (4/3,3/2) have bound 1 and lower bound 1; F=2 line " << line2_ok
       << "/" << line2 << ", F=3/2 line " << line32_ok << "/" << line32 << "; " << secs << " s";
    if (grid_regular != grid_lambda) os << "; non-regular:" << bad.str();
    return grid_lambda > 0 && grid_regular == grid_lambda && curve_nodes > 0 &&
           curve_exact == curve_nodes && line2 > 0 && line2_ok == line2 && line32 > 0 &&
           line32_ok == line32 && secs <= tol::grid_budget_s;
  });
}

// 10. One critical period emerges on exactly one side of the curve at F = 1.4.
inline CheckResult bifurcation_witness() {
  return detail::timed(10, "critical period emerging across the curve", [](std::ostringstream& os) {
    const double G = curve_g(1.4).G;
    int with = 0;
    for (double off : {-0.02, 0.02}) {
      const PotentialModel m({G + off, 1.4});
      const double h0 = m.h0();
      const CriticalCount c = count_critical_periods(m, 0.95 * h0, h0 * (1.0 - 1e-9), 40);
      os << "D=G" << (off > 0 ? "+" : "") << off << ": " << c.count << " sign change(s)"
         << (c.unstable ? " [unstable]" : "") << "; ";
      if (c.count >= 1) ++with;
      if (c.unstable) with = -10;
    }
    return with == 1;
  });
}

// 11. Blow-up exponent and sign of T' near the outer boundary at (-1, 1.7).
inline CheckResult polycycle_exponent() {
  return detail::timed(11, "boundary exponent of T' at (-1, 1.7)", [](std::ostringstream& os) {
    const Params mu{-1.0, 1.7};
    const PotentialModel m(mu);
    const PolycycleAsymptotics a = fit_polycycle_asymptotics(m);
    const double xi = (3.0 * mu.F - 4.0) / (2.0 * (mu.F - 1.0));
    const double expected = 0.5 - xi;
    const double err = detail::rel_err(a.gamma_fit, expected);
    const double want_sign = (mu.F - 2.0) / mu.D;
    const bool sign_ok = (a.delta_star_fit > 0.0) == (want_sign > 0.0);
    os << "gamma_fit " << a.gamma_fit << " vs 1/2-xi " << expected << " (rel err " << err
       << ", tol " << tol::gamma_rel << "); Delta*_fit " << a.delta_star_fit << ", sign of (F-2)/D "
       << (want_sign > 0 ? "+" : "-") << ": " << (sign_ok ? "match" : "mismatch");
    return err <= tol::gamma_rel && sign_ok;
  });
}

inline std::vector<CheckResult> acceptance() {
  return {identities(), conjugacy(), quantifiers(), psi_closed_form(), l_positivity(),
          delta_vs_period(), curve(), momenta(), classify_grid(), bifurcation_witness(),
          polycycle_exponent()};
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"identities", "quantifiers", "momenta",
                                          "delta",      "period",      "classify-grid"};
  return n;
}

/// Runs a named suite; DomainError for an unknown name.
inline std::vector<CheckResult> run_suite(const std::string& name) {
  if (name == "identities") return {identities(), l_positivity()};
  if (name == "quantifiers") return {quantifiers(), psi_closed_form()};
  if (name == "momenta") return {momenta()};
  if (name == "delta") return {delta_vs_period(), curve()};
  if (name == "period") return {conjugacy(), bifurcation_witness(), polycycle_exponent()};
  if (name == "classify-grid") return {classify_grid()};
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace loudcrit::verify

#endif  // LOUDCRIT_VERIFICATION_HPP
