#ifndef LOUDCRIT_CLI_CONFIG_HPP
#define LOUDCRIT_CLI_CONFIG_HPP

// Effective configuration of one CLI invocation and the records it emits.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "loudcrit/criticality.hpp"
#include "loudcrit/errors.hpp"

namespace loudcrit {

enum class Format { Csv, Json };

struct CliConfig {
  std::string command;
  std::optional<double> D;
  std::optional<double> F;
  Window window{};
  int grid = 50;
  double tol_quad = 1e-9;
  double tol_curve = 1e-12;
  double fit_decades = 4.0;
  Format format = Format::Csv;
  std::string out;  // empty: stdout

  void validate() const {
    if (!(tol_quad > 0.0) || !(tol_curve > 0.0) || !(fit_decades > 0.0)) {
      throw DomainError("tolerances must be positive");
    }
    if (!(window.D_lo < window.D_hi && window.F_lo < window.F_hi)) {
      throw DomainError("window is not well ordered");
    }
    if (grid < 1) throw DomainError("grid must be positive");
  }

  [[nodiscard]] ClassifyOptions classify_options() const {
    ClassifyOptions o;
    o.momentum_quad.abs_tol = tol_quad;
    o.curve.tol = tol_curve;
    o.curve.delta.quad.abs_tol = std::fmin(o.curve.delta.quad.abs_tol, tol_quad);
    return o;
  }

  [[nodiscard]] DeltaOptions delta_options() const {
    DeltaOptions o;
    o.quad.abs_tol = std::fmin(o.quad.abs_tol, tol_quad);
    return o;
  }

  [[nodiscard]] CurveOptions curve_options() const {
    CurveOptions o;
    o.tol = tol_curve;
    o.delta = delta_options();
    return o;
  }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json j;
    j["command"] = command;
    if (D) j["D"] = *D;
    if (F) j["F"] = *F;
    j["window"] = {window.D_lo, window.D_hi, window.F_lo, window.F_hi};
    j["grid"] = grid;
    j["tol_quad"] = tol_quad;
    j["tol_curve"] = tol_curve;
    j["fit_decades"] = fit_decades;
    j["format"] = format == Format::Csv ? "csv" : "json";
    j["out"] = out;
    return j;
  }
};

/// Header line echoing the configuration: a `#` comment for CSV, a record
/// with a "config" key for JSON lines.
inline void write_config_header(std::ostream& os, const CliConfig& cfg) {
  if (cfg.format == Format::Csv) {
    os << "# config " << cfg.to_json().dump() << '\n';
  } else {
    os << nlohmann::json{{"config", cfg.to_json()}}.dump() << '\n';
  }
}

// --- records -----------------------------------------------------------------

inline nlohmann::json to_json(const CriticalityVerdict& v) {
  nlohmann::json j;
  j["D"] = v.mu.D;
  j["F"] = v.mu.F;
  j["case"] = to_string(v.case_taken);
  j["case_index"] = v.case_index;
  j["reason"] = to_string(v.reason);
  if (!v.stage.empty()) j["stage"] = v.stage;
  if (!v.detail.empty()) j["detail"] = v.detail;
  j["xi"] = std::isnan(v.xi) ? nlohmann::json(nullptr) : nlohmann::json(v.xi);
  j["n"] = v.n_used;
  j["nu"] = v.nu_used;
  j["bound"] = v.bound ? nlohmann::json(*v.bound) : nlohmann::json(nullptr);
  j["lower_bound"] = v.lower_bound ? nlohmann::json(*v.lower_bound) : nlohmann::json(nullptr);
  auto& ms = j["momenta"] = nlohmann::json::array();
  for (const auto& m : v.momenta) ms.push_back({{"n", m.n}, {"value", m.value}, {"abs_error", m.abs_error}});
  j["flags"] = v.flags;
  return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

// Shortest representation that round-trips.
inline std::string csv_num(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <class T>
std::string csv_opt(const std::optional<T>& x) {
  return x ? std::to_string(*x) : std::string();
}

inline std::string join(const std::vector<std::string>& xs, char sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? std::string(1, sep) : "") + xs[i];
  return s;
}

}  // namespace detail

/// Emits rows under a fixed header, as CSV or one JSON object per line.
class RecordWriter {
 public:
  RecordWriter(std::ostream& os, Format f, std::vector<std::string> columns)
      : os_(os), format_(f), columns_(std::move(columns)) {
    if (format_ == Format::Csv) os_ << detail::join(columns_, ',') << '\n';
  }

  /// Cells are already formatted; JSON output parses numbers back.
  void row(const std::vector<std::string>& cells) {
    if (format_ == Format::Csv) {
      std::vector<std::string> q;
      for (const auto& c : cells) q.push_back(detail::csv_field(c));
      os_ << detail::join(q, ',') << '\n';
      return;
    }
    nlohmann::json j;
    for (std::size_t i = 0; i < columns_.size() && i < cells.size(); ++i) {
      const std::string& c = cells[i];
      if (c.empty()) {
        j[columns_[i]] = nullptr;
        continue;
      }
      char* end = nullptr;
      const double x = std::strtod(c.c_str(), &end);
      if (end && *end == '\0') {
        j[columns_[i]] = x;
      } else if (c == "true" || c == "false") {
        j[columns_[i]] = c == "true";
      } else {
        j[columns_[i]] = c;
      }
    }
    os_ << j.dump() << '\n';
  }

  void json(const nlohmann::json& j) { os_ << j.dump() << '\n'; }

 private:
  std::ostream& os_;
  Format format_;
  std::vector<std::string> columns_;
};

inline const std::vector<std::string>& verdict_columns() {
  static const std::vector<std::string> c{"kind", "D", "F", "case", "case_index", "reason",
                                          "xi", "n", "bound", "lower_bound", "flags", "detail"};
  return c;
}

inline std::vector<std::string> verdict_cells(const CriticalityVerdict& v, const std::string& kind) {
  std::string note = v.stage.empty() ? v.detail : v.stage + ": " + v.detail;
  return {kind,
          detail::csv_num(v.mu.D),
          detail::csv_num(v.mu.F),
          to_string(v.case_taken),
          std::to_string(v.case_index),
          to_string(v.reason),
          detail::csv_num(v.xi),
          std::to_string(v.n_used),
          detail::csv_opt(v.bound),
          detail::csv_opt(v.lower_bound),
          detail::join(v.flags, ';'),
          note};
}

}  // namespace loudcrit

#endif  // LOUDCRIT_CLI_CONFIG_HPP
