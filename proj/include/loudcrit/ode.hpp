#ifndef LOUDCRIT_ODE_HPP
#define LOUDCRIT_ODE_HPP

// Return times of planar flows to the half-line {y = 0, x > x_min}, used as an
// independent oracle for the quadrature periods.  Dormand-Prince 5(4) with
// dense output from Boost.Odeint; the crossing time is located on the dense
// interpolant.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "loudcrit/errors.hpp"
#include "loudcrit/loud_core.hpp"

namespace loudcrit {

using State2 = std::array<double, 2>;
using Field2 = std::function<State2(const State2&)>;

struct OdeOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  double t_max = 1e4;
  double initial_step = 1e-3;
};

struct ReturnResult {
  double time = 0.0;
  State2 state{};
  std::uint64_t steps = 0;
};

/// Integrates from `start` until the first upward crossing of y = 0 with
/// x > x_min, after the orbit has first left that half-line.
inline ReturnResult first_return(const Field2& field, const State2& start, double x_min,
                                 const OdeOptions& opt = {}) {
  namespace odeint = boost::numeric::odeint;
  using stepper_t = odeint::runge_kutta_dopri5<State2>;
  auto sys = [&](const State2& s, State2& ds, double) { ds = field(s); };
  auto stepper = odeint::make_dense_output(opt.abs_tol, opt.rel_tol, stepper_t());
  stepper.initialize(start, 0.0, opt.initial_step);

  ReturnResult out;
  bool left_section = false;
  State2 prev = start;
  while (stepper.current_time() < opt.t_max) {
    const auto [t0, t1] = stepper.do_step(sys);
    ++out.steps;
    const State2 cur = stepper.current_state();
    if (!left_section) {
      // Leave once y has become clearly nonzero.
      if (cur[1] != 0.0) left_section = true;
      prev = cur;
      continue;
    }
    if (prev[1] < 0.0 && cur[1] >= 0.0) {
      State2 tmp{};
      auto yat = [&](double t) {
        stepper.calc_state(t, tmp);
        return tmp[1];
      };
      std::uintmax_t iters = 100;
      const auto r = boost::math::tools::toms748_solve(
          yat, t0, t1, prev[1], cur[1], boost::math::tools::eps_tolerance<double>(52), iters);
      const double tc = 0.5 * (r.first + r.second);
      stepper.calc_state(tc, tmp);
      if (tmp[0] > x_min) {
        out.time = tc;
        out.state = tmp;
        return out;
      }
    }
    prev = cur;
  }
  throw ConvergenceError("no return to the section before t_max");
}

/// Period of the Loud orbit through (p1 - s, 0).
inline ReturnResult loud_orbit_period(const Params& mu, double s, const OdeOptions& opt = {}) {
  const ConicData cd = conic_data(mu);
  const State2 start{cd.p1 - s, 0.0};
  auto f = [mu](const State2& st) { return vector_field(mu, st[0], st[1]); };
  return first_return(f, start, 0.0, opt);
}

}  // namespace loudcrit

#endif  // LOUDCRIT_ODE_HPP
