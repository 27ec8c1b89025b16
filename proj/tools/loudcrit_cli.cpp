// loudcrit: classification scans, curve tables, Delta and period tables,
// and the verification suites.
//
// Exit codes: 0 ok, 1 verification failure, 2 internal error, 64 usage.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loudcrit/cli_config.hpp"
#include "loudcrit/loudcrit.hpp"

namespace {

using namespace loudcrit;

constexpr int kUsage = 64;
constexpr int kInternal = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Window parse_window(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("--window expects Dlo,Dhi,Flo,Fhi");
    }
  }
  if (v.size() != 4) throw UsageError("--window expects Dlo,Dhi,Flo,Fhi");
  return {v[0], v[1], v[2], v[3]};
}

Params need_mu(const CliConfig& cfg) {
  if (!cfg.D || !cfg.F) throw UsageError("both -D and -F are required");
  return {*cfg.D, *cfg.F};
}

int cmd_classify(const CliConfig& cfg, std::ostream& os) {
  const CriticalityVerdict v = classify(need_mu(cfg), cfg.classify_options());
  if (cfg.format == Format::Json) {
    os << to_json(v).dump() << '\n';
  } else {
    RecordWriter w(os, cfg.format, verdict_columns());
    w.row(verdict_cells(v, "point"));
  }
  return 0;
}

int cmd_scan(const CliConfig& cfg, std::ostream& os) {
  const auto recs = scan_lambda(cfg.window, cfg.grid, cfg.classify_options());
  if (cfg.format == Format::Json) {
    for (const auto& r : recs) {
      auto j = to_json(r.verdict);
      j["kind"] = to_string(r.kind);
      j["index"] = r.index;
      os << j.dump() << '\n';
    }
    return 0;
  }
  RecordWriter w(os, cfg.format, verdict_columns());
  for (const auto& r : recs) w.row(verdict_cells(r.verdict, to_string(r.kind)));
  return 0;
}

int cmd_curve(const CliConfig& cfg, double f_lo, double f_hi, int n, std::ostream& os) {
  if (!(f_lo < f_hi) || n < 0) throw UsageError("curve expects F_lo < F_hi and n >= 0");
  RecordWriter w(os, cfg.format,
                 {"F", "G", "residual", "bracket_lo", "bracket_hi", "low_confidence", "error"});
  using detail::csv_num;
  for (double F : linspace(f_lo, f_hi, n)) {
    CurvePoint cp;
    try {
      cp = curve_g(F, cfg.curve_options());
    } catch (const Error& e) {
      cp.F = F;
      cp.G = cp.residual = cp.bracket_lo = cp.bracket_hi = std::nan("");
      cp.low_confidence = true;
      cp.error = e.what();
    }
    w.row({csv_num(cp.F), csv_num(cp.G), csv_num(cp.residual), csv_num(cp.bracket_lo),
           csv_num(cp.bracket_hi), cp.low_confidence ? "true" : "false", cp.error});
  }
  return 0;
}

int cmd_delta(const CliConfig& cfg, std::ostream& os) {
  const Params mu = need_mu(cfg);
  const QuadResult r = delta_integral(mu, cfg.delta_options());
  RecordWriter w(os, cfg.format, {"D", "F", "delta", "integral", "abs_error"});
  using detail::csv_num;
  w.row({csv_num(mu.D), csv_num(mu.F), csv_num(delta(mu, cfg.delta_options())), csv_num(r.value),
         csv_num(r.abs_error)});
  return 0;
}

int cmd_period(const CliConfig& cfg, int samples, bool section, std::ostream& os) {
  const Params mu = need_mu(cfg);
  if (!in_lambda(mu)) throw DomainError("period tables are defined on Lambda only");
  if (samples < 2) throw UsageError("--samples must be at least 2");
  const PotentialModel m(mu);
  using detail::csv_num;
  if (section) {
    // s from 1e-1 down to 1e-1 * 10^-decades.
    RecordWriter w(os, cfg.format, {"s", "P"});
    for (int i = 0; i < samples; ++i) {
      const double s = 0.1 * std::pow(10.0, -cfg.fit_decades * i / (samples - 1));
      const double z = m.z_right() + s;
      if (!(z < 1.0)) continue;
      w.row({csv_num(s), csv_num(period_section(m, s))});
    }
    return 0;
  }
  // Deficits h0 - h geometric from h0/2 down to h0 * 10^-(decades + 1).
  RecordWriter w(os, cfg.format, {"h", "T", "dT"});
  const double h0 = m.h0();
  for (int i = 0; i < samples; ++i) {
    const double e = 0.5 * h0 * std::pow(10.0, -(cfg.fit_decades + 1.0) * i / (samples - 1));
    const PeriodSample p = period_deficit(m, e);
    w.row({csv_num(h0 - e), csv_num(p.T), csv_num(period_derivative_deficit(m, e, 0.1))});
  }
  return 0;
}

int cmd_verify(const CliConfig& cfg, const std::string& suite, std::ostream& os) {
  const std::vector<verify::CheckResult> res = verify::run_suite(suite);
  int failed = 0;
  RecordWriter w(os, cfg.format, {"suite", "criterion", "check", "pass", "seconds", "detail"});
  for (const auto& r : res) {
    w.row({suite, std::to_string(r.criterion), r.name, r.pass ? "true" : "false",
           detail::csv_num(r.seconds), r.detail});
    if (!r.pass) {
      ++failed;
      std::cerr << "check failed: " << r.name << '\n';
    }
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Criticality of the outer boundary for the dehomogenized Loud family"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string window_s, format_s = "csv";

  auto common = [&](CLI::App* sc) {
    sc->add_option("--format", format_s, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--out", cfg.out, "output file (default stdout)");
    sc->add_option("--tol-quad", cfg.tol_quad, "quadrature absolute tolerance")->capture_default_str();
    sc->add_option("--tol-curve", cfg.tol_curve, "curve solver tolerance")->capture_default_str();
    sc->add_option("--tol-fit", cfg.fit_decades, "fit window width in decades")->capture_default_str();
  };
  auto mu_opts = [&](CLI::App* sc) {
    sc->add_option("-D", cfg.D, "parameter D");
    sc->add_option("-F", cfg.F, "parameter F");
  };

  auto* classify_c = app.add_subcommand("classify", "classify one parameter");
  mu_opts(classify_c);
  common(classify_c);

  auto* scan_c = app.add_subcommand("scan", "classify a grid over a window");
  scan_c->add_option("--window", window_s, "Dlo,Dhi,Flo,Fhi (default -2,-0.5,1.05,2.45)");
  scan_c->add_option("--grid", cfg.grid, "nodes per axis")->capture_default_str();
  common(scan_c);

  double f_lo = 0.0, f_hi = 0.0;
  int n_curve = 0;
  auto* curve_c = app.add_subcommand("curve", "tabulate D = G(F)");
  curve_c->add_option("F_lo", f_lo)->required();
  curve_c->add_option("F_hi", f_hi)->required();
  curve_c->add_option("n", n_curve)->required();
  common(curve_c);

  auto* delta_c = app.add_subcommand("delta", "bifurcation coefficient at one parameter");
  mu_opts(delta_c);
  common(delta_c);

  int samples = 20;
  bool section = false;
  auto* period_c = app.add_subcommand("period", "period table near the outer boundary");
  mu_opts(period_c);
  period_c->add_option("--samples", samples)->capture_default_str();
  period_c->add_flag("--section", section, "tabulate P(s) instead of (h, T, T')");
  common(period_c);

  std::string suite;
  auto* verify_c = app.add_subcommand("verify", "run a verification suite");
  verify_c->add_option("suite", suite)->required();
  common(verify_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  std::unique_ptr<std::ofstream> file;
  try {
    cfg.format = format_s == "json" ? Format::Json : Format::Csv;
    if (!window_s.empty()) cfg.window = parse_window(window_s);
    CLI::App* sc = app.get_subcommands().front();
    cfg.command = sc->get_name();
    cfg.validate();
    if (sc == classify_c || sc == delta_c || sc == period_c) (void)need_mu(cfg);
    if (sc == verify_c) {
      const auto& names = verify::suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw UsageError("unknown suite '" + suite +
                         "'; suites: identities quantifiers momenta delta period classify-grid");
      }
    }
    if (!cfg.out.empty()) {
      file = std::make_unique<std::ofstream>(cfg.out);
      if (!*file) throw UsageError("cannot open " + cfg.out);
    }
    std::ostream& os = file ? *file : std::cout;
    write_config_header(os, cfg);
    if (sc == classify_c) return cmd_classify(cfg, os);
    if (sc == scan_c) return cmd_scan(cfg, os);
    if (sc == curve_c) return cmd_curve(cfg, f_lo, f_hi, n_curve, os);
    if (sc == delta_c) return cmd_delta(cfg, os);
    if (sc == period_c) return cmd_period(cfg, samples, section, os);
    return cmd_verify(cfg, suite, os);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
