#ifndef LOUDCRIT_QUADRATURE_HPP
#define LOUDCRIT_QUADRATURE_HPP

// Globally adaptive Gauss-Kronrod (10/21 point nodes taken from Boost.Math)
// with an absolute/relative stopping rule and the QUADPACK error heuristic,
// plus a fixed Gauss-Legendre rule for short analytic panels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace loudcrit {

struct QuadOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  int max_subdivisions = 4000;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  friend bool operator<(const Panel& l, const Panel& r) { return l.error < r.error; }
};

/// One 21-point Kronrod panel with the embedded 10-point Gauss estimate.
template <class F>
Panel gk21_panel(F& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& xk = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // Gauss order 10 is even: Gauss nodes sit at the odd Kronrod indices.
  double fv[41];
  const double f0 = f(mid);
  double kron = f0 * wk[0];
  double gau = 0.0;
  double resabs = std::fabs(f0) * wk[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double dx = half * xk[i];
    const double fp = f(mid + dx);
    const double fm = f(mid - dx);
    fv[2 * i - 1] = fp;
    fv[2 * i] = fm;
    kron += (fp + fm) * wk[i];
    resabs += (std::fabs(fp) + std::fabs(fm)) * wk[i];
    if (i % 2 == 1) gau += (fp + fm) * wg[i / 2];
  }
  const double mean = 0.5 * kron;
  double resasc = wk[0] * std::fabs(f0 - mean);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    resasc += wk[i] * (std::fabs(fv[2 * i - 1] - mean) + std::fabs(fv[2 * i] - mean));
  }
  kron *= half;
  gau *= half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);

  double err = std::fabs(kron - gau);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return Panel{a, b, kron, err};
}

}  // namespace detail

/// Adaptive integration of f over [a, b]. The integrand is never evaluated
/// at the endpoints, so integrable endpoint singularities are tolerated.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadOptions& opt = {}) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double sign = (b < a) ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::priority_queue<detail::Panel> work;
  const detail::Panel first = detail::gk21_panel(f, a, b);
  work.push(first);
  double total = first.value;
  double err = first.error;
  out.evaluations = 21;

  std::vector<detail::Panel> done;
  int splits = 0;
  while (!work.empty()) {
    if (err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
      out.converged = true;
      break;
    }
    if (splits >= opt.max_subdivisions) break;
    const detail::Panel worst = work.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b) ||
        (worst.b - worst.a) <= 64.0 * std::numeric_limits<double>::epsilon() *
                                   std::max(std::fabs(worst.a), std::fabs(worst.b))) {
      // Panel below floating point resolution: freeze it.
      work.pop();
      done.push_back(worst);
      if (work.empty()) break;
      continue;
    }
    work.pop();
    const detail::Panel l = detail::gk21_panel(f, worst.a, m);
    const detail::Panel r = detail::gk21_panel(f, m, worst.b);
    out.evaluations += 42;
    ++splits;
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    work.push(l);
    work.push(r);
  }

  // Re-sum to shed accumulated update round-off.
  double value = 0.0;
  double error = 0.0;
  for (const auto& p : done) {
    value += p.value;
    error += p.error;
  }
  while (!work.empty()) {
    value += work.top().value;
    error += work.top().error;
    work.pop();
  }
  if (!out.converged) out.converged = error <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(value));
  out.value = sign * value;
  out.abs_error = error;
  return out;
}

/// Fixed 20-point Gauss-Legendre rule on [a, b].
template <class F>
double integrate_gauss20(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

}  // namespace loudcrit

#endif  // LOUDCRIT_QUADRATURE_HPP
