#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "xxring/entanglement.hpp"
#include "xxring/error.hpp"
#include "xxring/oracle.hpp"

namespace xxring {

/// printf("%.<digits>g")-style formatting through std::to_chars, so output
/// does not depend on the C locale.
inline std::string format_number(double x, int significant_digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, significant_digits);
  return std::string(buf, res.ptr);
}

inline constexpr int kCsvDigits = 10;
inline constexpr int kEvalDigits = 12;
inline constexpr std::string_view kCsvHeader = "pair,j_sign,B,tau,concurrence";

inline double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw Error(ErrorCode::InvalidArgument, "cannot parse " + std::string(what) + " value '" + std::string(s) + "'");
  return v;
}

/// Inclusive linear grid; count = 1 yields {min}.
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "range count must be >= 1");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

/// "min:max:count".
inline std::vector<double> parse_range(std::string_view text, std::string_view what) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " range must be min:max:count");
  const double lo = parse_double(text.substr(0, c1), what);
  const double hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1), what);
  const double count = parse_double(text.substr(c2 + 1), what);
  if (count < 1.0 || count != std::floor(count))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " range count must be a positive integer");
  return linspace(lo, hi, static_cast<std::size_t>(count));
}

/// Comma-separated explicit values.
inline std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_double(text.substr(start, end - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct SweepConfig {
  Pair pair = Pair::P12;
  int j_sign = 1;
  std::vector<double> bs;
  std::vector<double> taus;
  std::string out_path;
};

struct SweepRow {
  Pair pair;
  int j_sign;
  double b;
  double tau;
  double concurrence;
};

inline void validate(const SweepConfig& cfg) {
  if (cfg.j_sign != 1 && cfg.j_sign != -1) throw Error(ErrorCode::InvalidArgument, "j_sign must be +1 or -1");
  if (cfg.bs.empty()) throw Error(ErrorCode::InvalidArgument, "empty B range");
  if (cfg.taus.empty()) throw Error(ErrorCode::InvalidArgument, "empty tau range");
  for (double b : cfg.bs)
    if (!std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "B values must be finite");
  for (double t : cfg.taus) validate(ThermalParams{t});
}

/// Rows in B-outer, tau-inner order regardless of thread count.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads = 1) {
  validate(cfg);
  std::vector<SweepRow> rows(cfg.bs.size() * cfg.taus.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double b = cfg.bs[i / cfg.taus.size()];
    const double tau = cfg.taus[i % cfg.taus.size()];
    const double c = concurrence_pair({static_cast<double>(cfg.j_sign), b, 3}, {tau}, cfg.pair);
    rows[i] = {cfg.pair, cfg.j_sign, b, tau, c};
  });
  return rows;
}

inline void write_csv_header(std::ostream& os) { os << kCsvHeader << '\n'; }

inline void write_csv_rows(std::ostream& os, const std::vector<SweepRow>& rows) {
  for (const auto& r : rows)
    os << to_string(r.pair) << ',' << r.j_sign << ',' << format_number(r.b, kCsvDigits) << ','
       << format_number(r.tau, kCsvDigits) << ',' << format_number(r.concurrence, kCsvDigits) << '\n';
}

inline void write_csv_file(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  write_csv_header(out);
  write_csv_rows(out, rows);
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

// --------------------------------------------------------------------------
// Config files: flat "key = value" lines, '#' starts a comment.
// --------------------------------------------------------------------------

inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline std::map<std::string, std::string> load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config '" + path + "'");
  return parse_key_values(in);
}

// --------------------------------------------------------------------------
// Figure presets
// --------------------------------------------------------------------------

inline constexpr std::size_t kFigurePoints = 200;

struct FigurePreset {
  int id;
  std::vector<SweepConfig> series;
};

inline FigurePreset figure_preset(int id) {
  const std::vector<double> tau_axis = linspace(0.05, 3.0, kFigurePoints);
  const std::vector<double> b_axis = linspace(0.0, 12.0, kFigurePoints);
  FigurePreset fp{id, {}};
  switch (id) {
    case 1:
    case 3: {
      const Pair pair = id == 1 ? Pair::P12 : Pair::P13;
      for (int j : {1, -1})
        for (double b : {0.0, 1.0, 10.0}) fp.series.push_back({pair, j, {b}, tau_axis, {}});
      break;
    }
    case 2:
      for (int j : {1, -1})
        for (double tau : {0.1, 0.5, 1.0}) fp.series.push_back({Pair::P12, j, b_axis, {tau}, {}});
      break;
    case 4:
      for (double tau : {0.1, 0.5, 1.0}) fp.series.push_back({Pair::P13, -1, b_axis, {tau}, {}});
      fp.series.push_back({Pair::P13, 1, b_axis, {2.0}, {}});
      break;
    default:
      throw Error(ErrorCode::BadFigureId, "figure id must be 1, 2, 3 or 4, got " + std::to_string(id));
  }
  return fp;
}

inline std::vector<SweepRow> run_figure(int id, unsigned threads = 1) {
  std::vector<SweepRow> rows;
  for (const auto& s : figure_preset(id).series) {
    auto part = run_sweep(s, threads);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

// --------------------------------------------------------------------------
// Zero-temperature limits summary
// --------------------------------------------------------------------------

struct LimitRow {
  std::string label;
  double computed;
  double expected;
  double tolerance;
  bool at_least = false;  // pass when computed >= expected - tolerance

  bool passed() const {
    return at_least ? computed >= expected - tolerance : std::abs(computed - expected) <= tolerance;
  }
};

/// Largest root of x^3 - 3x - 4 = 0 (Cardano; the cubic has one real root).
inline double b0_threshold_root() { return std::cbrt(2.0 + std::sqrt(3.0)) + std::cbrt(2.0 - std::sqrt(3.0)); }

/// B = 0 entanglement threshold tau* = 1 / ln x*.
inline double b0_threshold_tau() { return 1.0 / std::log(b0_threshold_root()); }

inline double max_c13_over_b(double j, double tau, double b_lo, double b_hi, std::size_t samples) {
  double best = 0.0;
  for (double b : linspace(b_lo, b_hi, samples))
    best = std::max(best, concurrence_pair({j, b, 3}, {tau}, Pair::P13));
  return best;
}

inline std::vector<LimitRow> limits_report() {
  std::vector<LimitRow> rows;
  const EigenSystem b1 = closed_form_eigensystem({-1.0, 1.0, 3});
  const double ferro_b1 = 2.0 / (2.0 + b1.a[4] * b1.a[4]);

  rows.push_back({"B=0  C12 tau->0, J<0 (tau=0.01)", concurrence_pair({-1.0, 0.0, 3}, {0.01}, Pair::P12), 1.0 / 3.0, 1e-3});
  rows.push_back({"B=0  C12 ground manifold, J<0",
                  concurrence_general(partial_trace(ground_state_mixture(closed_form_eigensystem({-1.0, 0.0, 3})).rho, 3, 1, 2)),
                  1.0 / 3.0, 1e-9});
  rows.push_back({"B=0  C12, J>0 (tau=0.05)", concurrence_pair({1.0, 0.0, 3}, {0.05}, Pair::P12), 0.0, 0.0});
  rows.push_back({"12   C12 tau->0, J>0 B=10 (tau=0.01)", concurrence_pair({1.0, 10.0, 3}, {0.01}, Pair::P12), 1.0, 1e-3, true});
  rows.push_back({"12   C12 tau->0, J<0 B=1 vs 2/(2+a4^2) (tau=0.005)",
                  concurrence_pair({-1.0, 1.0, 3}, {0.005}, Pair::P12), ferro_b1, 1e-3});
  rows.push_back({"12   C12 tau->0, J<0 B=1000 limit", c12_zero_t_limit({-1.0, 1000.0, 3}), 1.0, 1e-3});
  rows.push_back({"12   C12 tau->0, J<0 B=0.05 (tau=0.0005)", concurrence_pair({-1.0, 0.05, 3}, {0.0005}, Pair::P12), 2.0 / 3.0, 0.01});
  rows.push_back({"13   max C13, J<0 tau=0.002 B in [0.01,0.2]", max_c13_over_b(-1.0, 0.002, 0.01, 0.2, 191), 2.0 / 3.0, 0.01});
  rows.push_back({"13   C13 low-T approximation, B/tau -> inf", c13_low_t_approx(1.0, 1e-3).value, 2.0 / 3.0, 1e-12});
  rows.push_back({"B=0  threshold tau*, J<0 pair 12", threshold_scan({-1.0, 0.0, 3}, Pair::P12, {0.05, 3.0}),
                  b0_threshold_tau(), 0.002});
  return rows;
}

}  // namespace xxring
