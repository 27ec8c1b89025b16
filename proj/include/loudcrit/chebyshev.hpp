#ifndef LOUDCRIT_CHEBYSHEV_HPP
#define LOUDCRIT_CHEBYSHEV_HPP

// psi_nu basis, Wronskians, the operator D_nu and the momenta N_n.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "loudcrit/errors.hpp"
#include "loudcrit/quadrature.hpp"

namespace loudcrit {

using NuVector = std::vector<double>;

/// A scalar function together with a supplier of its derivatives.
///
/// Without an explicit supplier, derivatives of order <= 3 come from central
/// differences with step 1e-4 max(1, |x|) and three Richardson levels.
class Differentiable {
 public:
  using Value = std::function<double(double)>;
  using Supplier = std::function<double(double, int)>;

  static constexpr int kMaxNumericOrder = 3;

  explicit Differentiable(Value f) : f_(std::move(f)) {}
  Differentiable(Value f, Supplier d, int max_order)
      : f_(std::move(f)), d_(std::move(d)), max_order_(max_order) {}

  double operator()(double x) const { return f_(x); }

  [[nodiscard]] double derivative(double x, int order) const {
    if (order == 0) return f_(x);
    if (d_ && order <= max_order_) return d_(x, order);
    if (order > kMaxNumericOrder) {
      throw DerivativeUnavailable("no derivative of order " + std::to_string(order));
    }
    return richardson(x, order);
  }

  [[nodiscard]] bool has_closed_form(int order) const noexcept {
    return order == 0 || (d_ && order <= max_order_);
  }

 private:
  [[nodiscard]] double central(double x, int order, double h) const {
    switch (order) {
      case 1:
        return (f_(x + h) - f_(x - h)) / (2.0 * h);
      case 2:
        return (f_(x + h) - 2.0 * f_(x) + f_(x - h)) / (h * h);
      default:
        return (f_(x + 2.0 * h) - 2.0 * f_(x + h) + 2.0 * f_(x - h) - f_(x - 2.0 * h)) /
               (2.0 * h * h * h);
    }
  }

  [[nodiscard]] double richardson(double x, int order) const {
    const double h = 1e-4 * std::fmax(1.0, std::fabs(x));
    // Even error expansion in h: eliminate h^2, then h^4.
    const double a0 = central(x, order, h);
    const double a1 = central(x, order, 0.5 * h);
    const double a2 = central(x, order, 0.25 * h);
    const double b0 = (4.0 * a1 - a0) / 3.0;
    const double b1 = (4.0 * a2 - a1) / 3.0;
    return (16.0 * b1 - b0) / 15.0;
  }

  Value f_;
  Supplier d_;
  int max_order_ = 0;
};

/// psi_nu(x) = (1/(1 - x^2)) (x / sqrt(1 - x^2))^nu on (0, 1).
[[nodiscard]] inline double psi_nu(double nu, double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("psi_nu requires x in (0, 1)");
  const double w = 1.0 - x * x;
  return std::pow(x, nu) * std::pow(w, -1.0 - 0.5 * nu);
}

/// psi_nu with closed-form derivatives up to order 3, from the logarithmic
/// derivative L = nu/x + (2 + nu) x/(1 - x^2).
[[nodiscard]] inline Differentiable psi_nu_function(double nu) {
  auto value = [nu](double x) { return psi_nu(nu, x); };
  auto deriv = [nu](double x, int k) {
    const double p = psi_nu(nu, x);
    const double w = 1.0 - x * x;
    const double L = nu / x + (2.0 + nu) * x / w;
    const double L1 = -nu / (x * x) + (2.0 + nu) * (1.0 + x * x) / (w * w);
    const double L2 = 2.0 * nu / (x * x * x) + (2.0 + nu) * (6.0 * x + 2.0 * x * x * x) / (w * w * w);
    switch (k) {
      case 1:
        return p * L;
      case 2:
        return p * (L1 + L * L);
      default:
        return p * (L2 + 3.0 * L * L1 + L * L * L);
    }
  };
  return Differentiable(value, deriv, 3);
}

/// Wronskian det[f_j^{(i)}(x)], i, j < k.
[[nodiscard]] inline double wronskian(const std::vector<Differentiable>& fns, double x) {
  const auto k = static_cast<Eigen::Index>(fns.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = fns[j].derivative(x, static_cast<int>(i));
  }
  return m.determinant();
}

/// D_nu[f](x) = (x(1 - x^2))^{n(n+1)/2} W[psi_nu1, ..., psi_nun, f] / prod psi_nui.
[[nodiscard]] inline double cheb_operator(const NuVector& nus, const Differentiable& f, double x) {
  const std::size_t n = nus.size();
  if (n == 0) return f(x);
  if (!(x > 0.0 && x < 1.0)) throw DomainError("cheb_operator requires x in (0, 1)");
  std::vector<Differentiable> fns;
  fns.reserve(n + 1);
  double prod = 1.0;
  for (double nu : nus) {
    fns.push_back(psi_nu_function(nu));
    prod *= psi_nu(nu, x);
  }
  fns.push_back(f);
  const double pw = static_cast<double>(n * (n + 1) / 2);
  return std::pow(x * (1.0 - x * x), pw) * wronskian(fns, x) / prod;
}

/// One-step operator from f and f' with 1 - x passed separately:
/// D_nu f = x(1 - x^2) f' - nu (1 - x^2) f - (2 + nu) x^2 f.
[[nodiscard]] inline double d_nu_apply(double nu, double f, double fprime, double x, double xc) {
  const double w = xc * (1.0 + x);
  return x * w * fprime - nu * w * f - (2.0 + nu) * x * x * f;
}

// --- momenta ---------------------------------------------------------------

struct MomentumValue {
  int n = 1;
  double value = 0.0;
  double abs_error = 0.0;
};

struct MomentumOptions {
  QuadOptions quad{};
  /// Known blow-up exponent xi of f at 1, f = O((1 - x)^{-xi}).  When absent
  /// it is fitted on the last decade before 1.
  std::optional<double> xi;
  /// The theta integral is cut at pi/2 - tail_cut; the rest is added as a
  /// power-law tail.
  double tail_cut = 1e-12;
};

/// Integrand of N_n in delta = pi/2 - theta: f(cos d) cot(d)^{2n-2}.
template <class Fn>
double momentum_delta_integrand(const Fn& f, int n, double d) {
  const double s = std::sin(0.5 * d);
  const double xc = 2.0 * s * s;
  const double x = std::cos(d);
  const double fv = f(x, xc);
  if (n == 1 || fv == 0.0) return fv;
  return fv * std::pow(std::tan(0.5 * std::numbers::pi - d), 2.0 * n - 2.0);
}

namespace detail {

// Least-squares slope and its standard error of log|g| against log d over
// geometric points on [lo, hi].
template <class G>
std::pair<double, double> loglog_slope(const G& g, double lo, double hi, int npts) {
  std::vector<double> xs, ys;
  for (int i = 0; i < npts; ++i) {
    const double d = lo * std::pow(hi / lo, static_cast<double>(i) / (npts - 1));
    const double v = g(d);
    if (v != 0.0 && std::isfinite(v)) {
      xs.push_back(std::log(d));
      ys.push_back(std::log(std::fabs(v)));
    }
  }
  const auto m = static_cast<double>(xs.size());
  if (xs.size() < 3) return {0.0, 0.0};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / den;
  const double icpt = (sy - slope * sx) / m;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (icpt + slope * xs[i]);
    ss += r * r;
  }
  const double se = std::sqrt(ss / std::fmax(m - 2.0, 1.0) * m / den);
  return {slope, se};
}

}  // namespace detail

/// N_n[f] = int_0^1 f(x) (x/sqrt(1-x^2))^{2n-2} dx / sqrt(1-x^2), computed as
/// int_0^{pi/2} f(sin t) tan(t)^{2n-2} dt.  `f` takes (x, 1 - x).
template <class Fn>
MomentumValue momentum_xc(int n, const Fn& f, const MomentumOptions& opt = {}) {
  if (n < 1) throw DomainError("momentum order must be positive");
  auto g = [&](double d) { return momentum_delta_integrand(f, n, d); };

  // Exponent e of the delta-integrand at 0: g ~ d^e.
  double e = 0.0;
  if (opt.xi) {
    e = -2.0 * *opt.xi - 2.0 * n + 2.0;
    if (e <= -1.0) throw DivergenceError("momentum diverges for the given endpoint exponent");
  } else {
    const auto [slope, se] = detail::loglog_slope(g, 1e-6, 1e-5, 12);
    if (slope <= -1.0 + std::fmax(1e-3, 3.0 * se)) {
      throw DivergenceError("fitted endpoint exponent " + std::to_string(slope) + " <= -1");
    }
    e = slope;
  }

  // d = (pi/2) t^k makes the t-integrand O(t) at 0.
  const double k = std::fmin(std::fmax(1.0, 2.0 / (1.0 + e)), 64.0);
  const double half_pi = 0.5 * std::numbers::pi;
  const double dc = std::fmin(opt.tail_cut, 1e-3);
  const double tc = std::pow(dc / half_pi, 1.0 / k);
  auto gt = [&](double t) {
    const double d = half_pi * std::pow(t, k);
    return g(d) * half_pi * k * std::pow(t, k - 1.0);
  };
  const QuadResult body = integrate_adaptive(gt, tc, 1.0, opt.quad);
  if (!body.converged) {
    throw QuadratureError("momentum quadrature did not reach tolerance (err " +
                          std::to_string(body.abs_error) + ")");
  }
  const double tail = g(dc) * dc / (1.0 + e);
  if (!std::isfinite(body.value) || !std::isfinite(tail)) {
    throw QuadratureError("momentum integrand is not finite");
  }
  MomentumValue out;
  out.n = n;
  out.value = body.value + tail;
  out.abs_error = body.abs_error + 1e-2 * std::fabs(tail);
  return out;
}

/// N_n[f] for f of x alone.  The cut stays where cos(pi/2 - t) < 1.
template <class Fn>
MomentumValue momentum(int n, const Fn& f, const MomentumOptions& opt = {}) {
  MomentumOptions o = opt;
  o.tail_cut = std::fmax(opt.tail_cut, 1e-7);
  return momentum_xc(n, [&](double x, double) { return f(x); }, o);
}

/// Both sides of N_l[D_{nu_1..nu_n} f] = c_n (1 - 2l - nu_n) N_l[D_{nu_1..nu_{n-1}} f]
/// with c_1 = 1 and c_n = prod_{i<n} (nu_n - nu_i).
struct RecursionSides {
  MomentumValue lhs;
  MomentumValue rhs;
  double coefficient = 0.0;
};

[[nodiscard]] inline double recursion_coefficient(const NuVector& nus, int l) {
  if (nus.empty()) throw DomainError("recursion needs at least one nu");
  const double nun = nus.back();
  double c = 1.0;
  for (std::size_t i = 0; i + 1 < nus.size(); ++i) c *= (nun - nus[i]);
  return c * (1.0 - 2.0 * l - nun);
}

/// One-step form for f given with (x, 1 - x) arguments and a closed-form f'.
template <class Fn, class Fd>
RecursionSides momentum_recursion_1(double nu, const Fn& f, const Fd& fprime, int l,
                                    const MomentumOptions& opt = {}) {
  RecursionSides out;
  out.coefficient = recursion_coefficient({nu}, l);
  out.lhs = momentum_xc(
      l, [&](double x, double xc) { return d_nu_apply(nu, f(x, xc), fprime(x, xc), x, xc); }, opt);
  const MomentumValue prev = momentum_xc(l, f, opt);
  out.rhs = prev;
  out.rhs.value = out.coefficient * prev.value;
  out.rhs.abs_error = std::fabs(out.coefficient) * prev.abs_error;
  return out;
}

/// Generic form through the Wronskian; f must be differentiable on a
/// neighbourhood of each sample point.
inline RecursionSides momentum_recursion(const NuVector& nus, const Differentiable& f, int l,
                                         const MomentumOptions& opt = {}) {
  RecursionSides out;
  out.coefficient = recursion_coefficient(nus, l);
  NuVector head(nus.begin(), nus.end() - 1);
  out.lhs = momentum(l, [&](double x) { return cheb_operator(nus, f, x); }, opt);
  const MomentumValue prev = momentum(l, [&](double x) { return cheb_operator(head, f, x); }, opt);
  out.rhs = prev;
  out.rhs.value = out.coefficient * prev.value;
  out.rhs.abs_error = std::fabs(out.coefficient) * prev.abs_error;
  return out;
}

}  // namespace loudcrit

#endif  // LOUDCRIT_CHEBYSHEV_HPP
