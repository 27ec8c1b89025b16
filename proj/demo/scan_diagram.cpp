// Prints an ASCII map of the classification over the default window.
//   .  regular (case A)      o  regular (case B1)
//   *  criticality one       +  lower bound only
//   |  F = 3/2 or F = 2      -  D = -1/2        (blank: outside Lambda)
#include <cstdio>
#include <cstdlib>

#include "loudcrit/criticality.hpp"

using namespace loudcrit;

namespace {
char glyph(const CriticalityVerdict& v) {
  switch (v.reason) {
    case Reason::OutOfLambda: return ' ';
    case Reason::FEq2:
    case Reason::FEq32Log: return '|';
    case Reason::DEqMinusHalf: return '-';
    default: break;
  }
  switch (v.case_taken) {
    case CaseKind::A: return '.';
    case CaseKind::B1: return 'o';
    case CaseKind::B2: return '*';
    case CaseKind::LowerBoundOnly: return '+';
    case CaseKind::Inconclusive: return '?';
  }
  return '?';
}
}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 40;
  const Window w{};
  const auto recs = scan_lambda(w, n, {}, false);
  // Rows by F, columns by D; print F decreasing.
  for (int r = n - 1; r >= 0; --r) {
    std::printf("F=%5.3f ", recs[static_cast<std::size_t>(r * n)].verdict.mu.F);
    for (int c = 0; c < n; ++c) std::putchar(glyph(recs[static_cast<std::size_t>(r * n + c)].verdict));
    std::putchar('\n');
  }
  std::printf("        D from %.2f to %.2f\n\n", w.D_lo, w.D_hi);

  // The curve itself, where the one-step extension decides.
  for (double F : linspace(1.3, 1.48, 10)) {
    const CurvePoint cp = curve_g(F);
    const CriticalityVerdict v = classify({cp.G, F});
    std::printf("G(%.3f) = %+.6f  %s", F, cp.G, to_string(v.case_taken));
    if (v.bound) std::printf("  bound %d", *v.bound);
    if (v.lower_bound) std::printf("  lower bound %d", *v.lower_bound);
    std::printf("\n");
  }
  return 0;
}
