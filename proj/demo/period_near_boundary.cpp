// T'(h) near the outer boundary on both sides of the curve at F = 1.4, and
// the blow-up regime at (-1, 1.7).
#include <cmath>
#include <cstdio>

#include "loudcrit/delta.hpp"
#include "loudcrit/period.hpp"

using namespace loudcrit;

namespace {
void table(const Params& mu) {
  const PotentialModel m(mu);
  std::printf("mu = (%.6f, %.3f)  h0 = %.6f\n", mu.D, mu.F, m.h0());
  std::printf("  %-12s %-16s %-16s\n", "(h0-h)/h0", "T", "T'");
  for (int k = 1; k <= 10; ++k) {
    const double e = std::pow(10.0, -k) * m.h0();
    std::printf("  %-12.1e %-16.10f %-16.8e\n", e / m.h0(), period_deficit(m, e).T,
                period_derivative_deficit(m, e, 0.05));
  }
  const CriticalCount c = count_critical_periods(m, 0.95 * m.h0(), m.h0() * (1 - 1e-9), 40);
  std::printf("  sign changes of T' on (0.95 h0, h0): %d\n\n", c.count);
}
}  // namespace

int main() {
  const double G = curve_g(1.4).G;
  std::printf("G(1.4) = %.12f, Delta on either side: %+.4f / %+.4f\n\n", G, delta({G - 0.02, 1.4}),
              delta({G + 0.02, 1.4}));
  table({G - 0.02, 1.4});
  table({G + 0.02, 1.4});
  const PotentialModel m({-1.0, 1.7});
  const PolycycleAsymptotics a = fit_polycycle_asymptotics(m);
  table({-1.0, 1.7});
  std::printf("fit at (-1, 1.7): T' ~ %.5f (h0-h)^%.6f\n", a.delta_star_fit, a.gamma_fit);
  return 0;
}
