#ifndef LOUDCRIT_CRITICALITY_HPP
#define LOUDCRIT_CRITICALITY_HPP

// Criticality of the outer boundary of the period annulus for mu in Lambda:
// an upper bound from the quantifier / momentum test and, where the sign of
// the boundary behaviour of T' flips across a curve, a lower bound.

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "loudcrit/asymptotics.hpp"
#include "loudcrit/chebyshev.hpp"
#include "loudcrit/delta.hpp"
#include "loudcrit/errors.hpp"
#include "loudcrit/loud_core.hpp"
#include "loudcrit/parallel.hpp"
#include "loudcrit/potential_form.hpp"

namespace loudcrit {

enum class CaseKind { A, B1, B2, LowerBoundOnly, Inconclusive };

enum class Reason {
  None,
  OutOfLambda,
  FEq2,
  FEq32Log,
  DEqMinusHalf,
  TieFail,
  // A numerical stage failed; the stage is named in the verdict.
  StageFailure,
  // N1 is numerically zero but mu is not within the curve tolerance.
  N1Unresolved,
};

[[nodiscard]] inline const char* to_string(CaseKind c) {
  switch (c) {
    case CaseKind::A: return "A";
    case CaseKind::B1: return "B1";
    case CaseKind::B2: return "B2";
    case CaseKind::LowerBoundOnly: return "LowerBoundOnly";
    case CaseKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

[[nodiscard]] inline const char* to_string(Reason r) {
  switch (r) {
    case Reason::None: return "";
    case Reason::OutOfLambda: return "OUT_OF_LAMBDA";
    case Reason::FEq2: return "F_EQ_2";
    case Reason::FEq32Log: return "F_EQ_3_2_LOG";
    case Reason::DEqMinusHalf: return "D_EQ_MINUS_HALF";
    case Reason::TieFail: return "TIE_FAIL";
    case Reason::StageFailure: return "STAGE_FAILURE";
    case Reason::N1Unresolved: return "N1_UNRESOLVED";
  }
  return "?";
}

struct CriticalityVerdict {
  Params mu;
  CaseKind case_taken = CaseKind::Inconclusive;
  /// j for B1, m for B2, 0 otherwise.
  int case_index = 0;
  Reason reason = Reason::None;
  /// Stage that failed, for Reason::StageFailure.
  std::string stage;
  std::string detail;
  double xi = std::nan("");
  int n_used = 0;
  NuVector nu_used;
  std::optional<int> bound;
  std::optional<int> lower_bound;
  std::vector<MomentumValue> momenta;
  std::vector<std::string> flags;

  /// Regular parameter: criticality zero is certified.
  [[nodiscard]] bool regular() const { return bound && *bound == 0; }
};

struct ClassifyOptions {
  double guard_F2 = 1e-4;
  double guard_F32 = 1e-4;
  double guard_D_half = 1e-4;
  /// |D - G(F)| below this runs the one-step extension.
  double curve_tol = 1e-6;
  /// N1 counts as nonzero above n1_factor * max(error estimate, n1_floor).
  double n1_factor = 10.0;
  double n1_floor = 1e-9;
  /// Offset used to certify a sign change across F = 2 or across the curve.
  double sign_probe = 1e-3;
  QuadOptions momentum_quad{1e-11, 1e-10, 4000};
  CurveOptions curve{};
};

/// G(F) per F, computed on first use and read-only afterwards.  Safe to share
/// between threads.
class CurveTable {
 public:
  explicit CurveTable(CurveOptions opt = {}) : opt_(opt) {}

  [[nodiscard]] CurvePoint get(double F) const {
    {
      std::lock_guard<std::mutex> lk(mu_);
      if (auto it = table_.find(F); it != table_.end()) return it->second;
    }
    CurvePoint cp;
    try {
      cp = curve_g(F, opt_);
    } catch (const Error& e) {
      cp.F = F;
      cp.G = std::nan("");
      cp.error = e.what();
    }
    std::lock_guard<std::mutex> lk(mu_);
    return table_.emplace(F, cp).first->second;
  }

  /// Fills the table for every F in `fs` in parallel.
  void precompute(const std::vector<double>& fs, unsigned workers = worker_count()) const {
    parallel_for(fs.size(), [&](std::size_t i) { (void)get(fs[i]); }, workers);
  }

 private:
  CurveOptions opt_;
  mutable std::mutex mu_;
  mutable std::map<double, CurvePoint> table_;
};

/// N1[f_even]; requires xi < 1/2 at n = 0.
[[nodiscard]] inline MomentumValue n1_of_mu(const PotentialModel& m, const QuadOptions& quad = {1e-11, 1e-10, 4000}) {
  const XiResult xr = xi_value(catalog_n0(m));
  if (!(xr.xi < 0.5)) throw DivergenceError("N1 needs xi < 1/2 (xi = " + std::to_string(xr.xi) + ")");
  MomentumOptions o;
  o.quad = quad;
  o.xi = std::fmax(xr.xi, 0.0);
  return momentum_xc(1, [&](double x, double xc) { return m.f_even(x, xc); }, o);
}

/// N1[D_nu f_even] for the one-step extension.
[[nodiscard]] inline MomentumValue n1_extended(const PotentialModel& m, double nu,
                                               const QuadOptions& quad = {1e-11, 1e-10, 4000}) {
  MomentumOptions o;
  o.quad = quad;
  return momentum_xc(
      1,
      [&](double x, double xc) {
        return d_nu_apply(nu, m.f_even(x, xc), m.f_even_derivative(x, xc), x, xc);
      },
      o);
}

namespace detail {

// Smallest m >= 1 with xi + m >= 1/2.
inline int step_count(double xi) {
  int m = 1;
  while (xi + m < 0.5) ++m;
  return m;
}

inline bool near(double a, double b) { return std::fabs(a - b) < 1e-9; }

inline CriticalityVerdict stage_failure(CriticalityVerdict v, const char* stage, const std::exception& e) {
  v.case_taken = CaseKind::Inconclusive;
  v.reason = Reason::StageFailure;
  v.stage = stage;
  v.detail = e.what();
  v.bound.reset();
  return v;
}

// a_l changes sign between F = 2 - p and F = 2 + p at this D.
inline bool a_l_flips_at_2(double D, double p) {
  const Params lo{D, 2.0 - p}, hi{D, 2.0 + p};
  if (!in_lambda(lo) || !in_lambda(hi)) return false;
  const double al = catalog_n0(PotentialModel(lo)).a_l;
  const double ah = catalog_n0(PotentialModel(hi)).a_l;
  return (al > 0.0) != (ah > 0.0) && al != 0.0 && ah != 0.0;
}

}  // namespace detail

/// Decision procedure at one parameter.  `table` supplies G(F); a private
/// table is used when none is given.
[[nodiscard]] inline CriticalityVerdict classify(const Params& mu, const ClassifyOptions& opt = {},
                                                 const CurveTable* table = nullptr) {
  CriticalityVerdict v;
  v.mu = mu;
  const double D = mu.D, F = mu.F;

  // (0) guards.
  if (F > 1.0 && D + F > 0.0 && std::fabs(D + 0.5) < opt.guard_D_half) {
    v.reason = Reason::DEqMinusHalf;
    return v;
  }
  if (!in_lambda(mu)) {
    v.reason = Reason::OutOfLambda;
    return v;
  }
  if (std::fabs(F - 2.0) < opt.guard_F2) {
    v.reason = Reason::FEq2;
    try {
      if (detail::a_l_flips_at_2(D, std::fmax(opt.sign_probe, 2.0 * opt.guard_F2))) {
        v.lower_bound = 1;
        v.flags.emplace_back("a_l_sign_change");
      }
    } catch (const Error& e) {
      v.detail = e.what();
    }
    return v;
  }
  if (std::fabs(F - 1.5) < opt.guard_F32) {
    v.reason = Reason::FEq32Log;
    return v;
  }

  // (1) n = 0.
  std::optional<PotentialModel> model;
  XiResult xr;
  try {
    model.emplace(mu);
    xr = xi_value(catalog_n0(*model));
  } catch (const TieDegeneracyError& e) {
    v.reason = Reason::TieFail;
    v.detail = e.what();
    return v;
  } catch (const Error& e) {
    return detail::stage_failure(v, "catalog_n0", e);
  }
  v.xi = xr.xi;
  v.n_used = 0;
  if (xr.side == XiSide::Tie) v.flags.emplace_back("tie");

  // (2) case A.
  if (xr.xi > 0.5) {
    v.case_taken = CaseKind::A;
    v.bound = 0;
    return v;
  }
  if (detail::near(xr.xi, 0.5)) {
    return detail::stage_failure(v, "xi", DomainError("xi = 1/2"));
  }

  // (3) case B at n = 0.
  MomentumValue n1;
  try {
    n1 = n1_of_mu(*model, opt.momentum_quad);
  } catch (const Error& e) {
    return detail::stage_failure(v, "n1_of_mu", e);
  }
  v.momenta.push_back(n1);
  const double thr = opt.n1_factor * std::fmax(n1.abs_error, opt.n1_floor);
  if (std::fabs(n1.value) > thr) {
    v.case_taken = CaseKind::B1;
    v.case_index = 1;
    v.bound = 0;
    return v;
  }

  // N1 is numerically zero: it must be the curve.
  CurvePoint cp;
  try {
    cp = table ? table->get(F) : curve_g(F, opt.curve);
  } catch (const Error& e) {
    return detail::stage_failure(v, "curve_g", e);
  }
  if (!cp.error.empty()) {
    return detail::stage_failure(v, "curve_g", Error(cp.error));
  }
  if (cp.low_confidence) v.flags.emplace_back("low_confidence_curve");
  if (!(std::fabs(D - cp.G) < opt.curve_tol)) {
    v.reason = Reason::N1Unresolved;
    return v;
  }
  v.flags.emplace_back("on_curve");

  // Lower bound: Delta changes sign across the curve.
  try {
    const double dm = delta({D - opt.sign_probe, F}, opt.curve.delta);
    const double dp = delta({D + opt.sign_probe, F}, opt.curve.delta);
    if ((dm > 0.0) != (dp > 0.0)) {
      v.lower_bound = 1;
    } else {
      v.flags.emplace_back("sign_change_uncertified");
    }
  } catch (const Error& e) {
    v.flags.emplace_back(std::string("sign_change_failed: ") + e.what());
  }

  // One-step extension with nu_1 = -1.
  constexpr double nu1 = -1.0;
  XiResult x1;
  try {
    x1 = xi_value(catalog_n1(*model, nu1));
  } catch (const TieDegeneracyError& e) {
    v.reason = Reason::TieFail;
    v.detail = e.what();
    return v;
  } catch (const Error& e) {
    return detail::stage_failure(v, "catalog_n1", e);
  }
  v.n_used = 1;
  v.nu_used = {nu1};
  v.xi = x1.xi;
  const int m = detail::step_count(x1.xi);
  MomentumValue ext;
  try {
    ext = n1_extended(*model, nu1, opt.momentum_quad);
  } catch (const Error& e) {
    return detail::stage_failure(v, "n1_extended", e);
  }
  v.momenta.push_back(ext);
  if (std::fabs(ext.value) > opt.n1_factor * std::fmax(ext.abs_error, opt.n1_floor)) {
    v.flags.emplace_back("extended_momentum_nonzero");
  }

  const double top = x1.xi + m;
  if (m == 1 && !detail::near(top, 0.5) && !detail::near(top, 1.0)) {
    v.case_taken = CaseKind::B2;
    v.case_index = m;
    v.bound = 1;
  } else {
    v.case_taken = CaseKind::LowerBoundOnly;
    v.case_index = m;
    if (!v.lower_bound) {
      v.case_taken = CaseKind::Inconclusive;
      v.reason = Reason::N1Unresolved;
    }
  }
  return v;
}

// --- grid scans ---------------------------------------------------------------

struct Window {
  double D_lo = -2.0;
  double D_hi = -0.5;
  double F_lo = 1.05;
  double F_hi = 2.45;
};

enum class NodeKind { Grid, Curve, LineF32, LineF2 };

[[nodiscard]] inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Grid: return "grid";
    case NodeKind::Curve: return "curve";
    case NodeKind::LineF32: return "line_F_3_2";
    case NodeKind::LineF2: return "line_F_2";
  }
  return "?";
}

struct ScanRecord {
  std::size_t index = 0;
  NodeKind kind = NodeKind::Grid;
  CriticalityVerdict verdict;
};

[[nodiscard]] inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

/// Classifies a grid_n x grid_n grid over the window (rows by F, columns by
/// D), followed by nodes on the curve D = G(F) at the grid's F values and on
/// the lines F = 3/2 and F = 2 at the grid's D values.  Output order is fixed
/// by node index.
[[nodiscard]] inline std::vector<ScanRecord> scan_lambda(const Window& w, int grid_n,
                                                         const ClassifyOptions& opt = {},
                                                         bool mark_lines = true,
                                                         unsigned workers = worker_count()) {
  if (!(w.D_lo < w.D_hi && w.F_lo < w.F_hi)) throw DomainError("window is not well ordered");
  const auto Ds = linspace(w.D_lo, w.D_hi, grid_n);
  const auto Fs = linspace(w.F_lo, w.F_hi, grid_n);

  CurveTable table(opt.curve);
  std::vector<double> curve_fs;
  for (double F : Fs) {
    if (F > 1.0 + opt.curve.guard && F < 1.5 - opt.guard_F32) curve_fs.push_back(F);
  }
  table.precompute(curve_fs, workers);

  std::vector<std::pair<NodeKind, Params>> nodes;
  for (double F : Fs)
    for (double D : Ds) nodes.push_back({NodeKind::Grid, {D, F}});
  if (mark_lines) {
    for (double F : curve_fs) {
      const CurvePoint cp = table.get(F);
      if (cp.error.empty() && cp.G >= w.D_lo && cp.G <= w.D_hi) {
        nodes.push_back({NodeKind::Curve, {cp.G, F}});
      }
    }
    for (double Fl : {1.5, 2.0}) {
      if (Fl < w.F_lo || Fl > w.F_hi) continue;
      for (double D : Ds) nodes.push_back({Fl == 1.5 ? NodeKind::LineF32 : NodeKind::LineF2, {D, Fl}});
    }
  }

  std::vector<ScanRecord> out(nodes.size());
  parallel_for(
      nodes.size(),
      [&](std::size_t i) {
        out[i].index = i;
        out[i].kind = nodes[i].first;
        out[i].verdict = classify(nodes[i].second, opt, &table);
      },
      workers);
  return out;
}

}  // namespace loudcrit

#endif  // LOUDCRIT_CRITICALITY_HPP
