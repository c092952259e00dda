#pragma once

// Command-line front end: eval, sweep, figure, limits, verify.
// Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 I/O error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "xxring/xxring.hpp"

namespace xxring::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kIoError = 3 };

struct Hooks {
  ClosedFormProvider closed_form = closed_form_eigensystem;
};

namespace detail {

struct StringOption {
  std::string value;
};

/// Fills options that `sub` did not receive on the command line from a
/// key = value file.
inline void apply_config(const std::string& path, const CLI::App& sub,
                         const std::map<std::string, StringOption*>& options) {
  for (const auto& [key, value] : load_key_values(path)) {
    auto it = options.find(key);
    if (it == options.end()) throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
    if (sub.count("--" + key) == 0) it->second->value = value;
  }
}

inline int parse_j(const std::string& s) {
  const double v = parse_double(s, "j");
  if (v != 1.0 && v != -1.0) throw Error(ErrorCode::InvalidArgument, "--j must be 1 or -1");
  return static_cast<int>(v);
}

inline Pair parse_pair_or_throw(const std::string& s) {
  auto p = parse_pair(s);
  if (!p) throw Error(ErrorCode::InvalidArgument, "--pair must be 12, 13 or 23");
  return *p;
}

inline unsigned parse_threads(const std::string& s) {
  if (s.empty()) return 1;
  const double v = parse_double(s, "threads");
  if (v < 0.0 || v != std::floor(v)) throw Error(ErrorCode::InvalidArgument, "--threads must be a non-negative integer");
  if (v == 0.0) return std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(v);
}

inline std::vector<double> axis(const StringOption& list, const StringOption& range, std::string_view what) {
  if (!range.value.empty()) return parse_range(range.value, what);
  if (!list.value.empty()) return parse_list(list.value, what);
  return {};
}

inline int exit_code_for(const Error& e) { return e.code() == ErrorCode::Io ? kIoError : kBadInput; }

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const Hooks& hooks = {}) {
  using detail::StringOption;
  CLI::App app{"Thermal pairwise entanglement of the three-qubit XX ring with a field impurity on site 3",
               "xxring"};
  app.require_subcommand(1);

  StringOption j, b, tau, pair, b_range, tau_range, out_path, config, threads;
  StringOption b_max, tau_min;
  bool per_point = false;
  int figure_id = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--j", j.value, "coupling sign, 1 or -1");
    sub->add_option("--pair", pair.value, "site pair: 12, 13 or 23");
    sub->add_option("--config", config.value, "key = value file; flags take precedence");
    sub->add_option("--threads", threads.value, "worker threads (0 = hardware concurrency)");
  };

  CLI::App* eval = app.add_subcommand("eval", "concurrence at a single (J, B, tau) point");
  add_common(eval);
  eval->add_option("--b", b.value, "impurity field strength B");
  eval->add_option("--tau", tau.value, "scaled temperature kT/|J|");

  CLI::App* sweep = app.add_subcommand("sweep", "concurrence over a B x tau grid as CSV");
  add_common(sweep);
  sweep->add_option("--b", b.value, "comma-separated B values");
  sweep->add_option("--tau", tau.value, "comma-separated tau values");
  sweep->add_option("--b-range", b_range.value, "min:max:count");
  sweep->add_option("--tau-range", tau_range.value, "min:max:count");
  sweep->add_option("--out", out_path.value, "output CSV path (default stdout)");

  CLI::App* figure = app.add_subcommand("figure", "regenerate the preset data of figure 1-4");
  figure->add_option("id", figure_id, "figure number")->required();
  figure->add_option("--out", out_path.value, "output CSV path (default fig<id>.csv)");
  figure->add_option("--threads", threads.value, "worker threads");

  CLI::App* limits = app.add_subcommand("limits", "tabulate the zero-temperature limits");

  CLI::App* verify = app.add_subcommand("verify", "cross-check closed-form results against brute force");
  verify->add_option("--b-max", b_max.value, "add this B value to the default grid");
  verify->add_option("--tau-min", tau_min.value, "add this tau value to the default grid");
  verify->add_option("--b-range", b_range.value, "replace the B axis with min:max:count");
  verify->add_option("--tau-range", tau_range.value, "replace the tau axis with min:max:count");
  verify->add_option("--threads", threads.value, "worker threads");
  verify->add_flag("--per-point", per_point, "print every grid point");

  // CLI11 wants argv-style input, last argument first.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    const std::map<std::string, StringOption*> configurable{
        {"j", &j},           {"b", &b},         {"tau", &tau},         {"pair", &pair},
        {"b-range", &b_range}, {"tau-range", &tau_range}, {"out", &out_path}, {"threads", &threads}};
    for (CLI::App* sub : {eval, sweep})
      if (sub->parsed() && !config.value.empty()) detail::apply_config(config.value, *sub, configurable);

    if (eval->parsed()) {
      if (j.value.empty() || b.value.empty() || tau.value.empty() || pair.value.empty())
        throw Error(ErrorCode::InvalidArgument, "eval needs --j, --b, --tau and --pair");
      const ModelParams params{static_cast<double>(detail::parse_j(j.value)), parse_double(b.value, "b"), 3};
      const ThermalParams tp{parse_double(tau.value, "tau")};
      out << format_number(concurrence_pair(params, tp, detail::parse_pair_or_throw(pair.value)), kEvalDigits)
          << '\n';
      return kOk;
    }

    if (sweep->parsed()) {
      SweepConfig cfg;
      cfg.pair = pair.value.empty() ? Pair::P12 : detail::parse_pair_or_throw(pair.value);
      cfg.j_sign = j.value.empty() ? 1 : detail::parse_j(j.value);
      cfg.bs = detail::axis(b, b_range, "B");
      cfg.taus = detail::axis(tau, tau_range, "tau");
      cfg.out_path = out_path.value;
      const auto rows = run_sweep(cfg, detail::parse_threads(threads.value));
      if (cfg.out_path.empty()) {
        write_csv_header(out);
        write_csv_rows(out, rows);
      } else {
        write_csv_file(cfg.out_path, rows);
      }
      return kOk;
    }

    if (figure->parsed()) {
      const auto rows = run_figure(figure_id, detail::parse_threads(threads.value));
      const std::string path = out_path.value.empty() ? "fig" + std::to_string(figure_id) + ".csv" : out_path.value;
      write_csv_file(path, rows);
      out << "wrote " << rows.size() << " rows (" << figure_preset(figure_id).series.size() << " series) to "
          << path << '\n';
      return kOk;
    }

    if (limits->parsed()) {
      bool all_passed = true;
      for (const auto& row : limits_report()) {
        const std::string expected = row.at_least
                                         ? ">= " + format_number(row.expected - row.tolerance, 10)
                                         : format_number(row.expected, 10) + " +- " + format_number(row.tolerance, 3);
        out << std::left << std::setw(54) << row.label << " computed " << format_number(row.computed, 10)
            << "  expected " << expected << "  " << (row.passed() ? "pass" : "FAIL") << '\n';
        all_passed = all_passed && row.passed();
      }
      return all_passed ? kOk : kVerifyFailed;
    }

    if (verify->parsed()) {
      Grid grid = default_grid();
      if (!b_range.value.empty()) grid.bs = parse_range(b_range.value, "B");
      if (!tau_range.value.empty()) grid.taus = parse_range(tau_range.value, "tau");
      auto add_unique = [](std::vector<double>& axis_values, double v) {
        if (std::find(axis_values.begin(), axis_values.end(), v) == axis_values.end()) axis_values.push_back(v);
      };
      if (!b_max.value.empty()) add_unique(grid.bs, parse_double(b_max.value, "b-max"));
      if (!tau_min.value.empty()) add_unique(grid.taus, parse_double(tau_min.value, "tau-min"));
      const CrossCheckReport report =
          run_cross_check(grid, hooks.closed_form, detail::parse_threads(threads.value));
      report.print(out, per_point);
      return report.passed() ? kOk : kVerifyFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_code_for(e);
  }
  return kBadInput;
}

}  // namespace xxring::cli
