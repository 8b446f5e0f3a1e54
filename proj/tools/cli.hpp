#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dbubble.hpp"

namespace dbubble::cli {

enum class Command { table, candidate, geodesic, verify, pinch };

enum class ExitCode : int { success = 0, validation = 1, numerical = 2 };

/// One parsed invocation. Only the fields of `command` are meaningful.
struct CommandRequest {
  Command command = Command::verify;
  bool help = false;
  std::string help_text;

  // table
  double p_min = 0.0;
  double p_max = 0.0;
  double step = 1.0;
  std::string format = "csv";
  std::string out;

  // shared
  double tol = kDefaultConstructionTolerance;
  double p = 0.0;

  // candidate
  CandidateKind kind = CandidateKind::standard;
  double a1 = 1.0;
  std::optional<double> a2;
  std::string svg;
  std::string json;

  // geodesic
  Point from;
  Point to;

  // verify
  std::string suite;

  // pinch
  double r_min = 0.0;
  double r_max = 0.0;
  std::size_t samples = 0;
  double r1 = 1.0;
  double r2 = 1.0;
};

struct RunReport {
  int exit_code = 0;
  std::vector<std::string> artifacts;
  std::string summary;
  /// Text for standard output.
  std::string output;
};

namespace detail {

inline Point parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ValidationError("expected a point as x,y but got '" + s + "'");
  try {
    std::size_t used_x = 0, used_y = 0;
    const std::string xs = s.substr(0, comma);
    const std::string ys = s.substr(comma + 1);
    const double x = std::stod(xs, &used_x);
    const double y = std::stod(ys, &used_y);
    if (used_x != xs.size() || used_y != ys.size()) throw std::invalid_argument("trailing text");
    return {x, y};
  } catch (const std::logic_error&) {
    throw ValidationError("expected a point as x,y but got '" + s + "'");
  }
}

struct Parser {
  CLI::App app{"Double bubbles in the plane with density r^p", "dbubble"};
  CommandRequest req;
  std::string kind;
  std::string from;
  std::string to;
  double a2 = 0.0;
  CLI::App* table = nullptr;
  CLI::App* candidate = nullptr;
  CLI::App* geodesic = nullptr;
  CLI::App* verify = nullptr;
  CLI::App* pinch = nullptr;
  CLI::Option* a2_opt = nullptr;

  Parser() {
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", kVersion);

    table = app.add_subcommand("table", "Perimeters of the four candidates at unit areas over a range of p");
    table->add_option("--p-min", req.p_min, "Smallest p")->required();
    table->add_option("--p-max", req.p_max, "Largest p")->required();
    table->add_option("--step", req.step, "Spacing of p values")->capture_default_str();
    table->add_option("--format", req.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    table->add_option("--out", req.out, "Write the table here instead of standard output");
    table->add_option("--tol", req.tol, "Construction tolerance on areas")->capture_default_str();

    candidate = app.add_subcommand("candidate", "Build one candidate and emit its geometry");
    candidate->add_option("kind", kind, "standard, symmetric, two-circles or concentric")
        ->required()
        ->check(CLI::IsMember({"standard", "symmetric", "two-circles", "concentric"}));
    candidate->add_option("--p", req.p, "Density exponent")->required();
    candidate->add_option("--a1", req.a1, "Weighted area of region 1")->required();
    a2_opt = candidate->add_option("--a2", a2, "Weighted area of region 2 (default: a1)");
    candidate->add_option("--svg", req.svg, "Write an SVG drawing here");
    candidate->add_option("--json", req.json, "Write the geometry JSON here instead of standard output");
    candidate->add_option("--tol", req.tol, "Construction tolerance on areas")->capture_default_str();

    geodesic = app.add_subcommand("geodesic", "Shortest path between two points");
    geodesic->add_option("--p", req.p, "Density exponent")->required();
    geodesic->add_option("--from", from, "Start point x,y")->required();
    geodesic->add_option("--to", to, "End point x,y")->required();

    verify = app.add_subcommand("verify", "Run the property suites");
    verify->add_option("--suite", req.suite, "Run only this suite");

    pinch = app.add_subcommand("pinch", "Perimeter change of the pinch deformation of two tangent circles");
    pinch->add_option("--p", req.p, "Density exponent")->required();
    pinch->add_option("--r-min", req.r_min, "Smallest pinch radius")->required();
    pinch->add_option("--r-max", req.r_max, "Largest pinch radius")->required();
    pinch->add_option("--samples", req.samples, "Number of log-spaced radii")->required();
    pinch->add_option("--r1", req.r1, "Radius of the left circle")->capture_default_str();
    pinch->add_option("--r2", req.r2, "Radius of the right circle")->capture_default_str();
    pinch->add_option("--out", req.out, "Write the CSV here instead of standard output");
  }

  CLI::App* chosen() const {
    for (auto* s : {table, candidate, geodesic, verify, pinch}) {
      if (s->parsed()) return s;
    }
    return nullptr;
  }
};

inline void validate(const CommandRequest& r) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
  };
  need(std::isfinite(r.tol) && r.tol > 0.0, "--tol must be positive");
  switch (r.command) {
    case Command::table:
      need(std::isfinite(r.p_min) && r.p_min >= 0.0, "--p-min must be >= 0");
      need(std::isfinite(r.p_max) && r.p_max >= r.p_min, "--p-max must be >= --p-min");
      need(std::isfinite(r.step) && r.step > 0.0, "--step must be positive");
      need((r.p_max - r.p_min) / r.step <= 10000.0, "too many p values");
      break;
    case Command::candidate:
      need(std::isfinite(r.p) && r.p >= 0.0, "--p must be >= 0");
      need(std::isfinite(r.a1) && r.a1 > 0.0, "--a1 must be positive");
      need(!r.a2 || (std::isfinite(*r.a2) && *r.a2 > 0.0), "--a2 must be positive");
      break;
    case Command::geodesic:
      need(std::isfinite(r.p) && r.p >= 0.0, "--p must be >= 0");
      break;
    case Command::verify:
      break;
    case Command::pinch:
      need(std::isfinite(r.p) && r.p >= 0.0, "--p must be >= 0");
      need(r.r1 > 0.0 && r.r2 > 0.0, "--r1 and --r2 must be positive");
      need(r.r_min > 0.0 && r.r_max >= r.r_min, "need 0 < --r-min <= --r-max");
      need(r.r_max < std::min(r.r1, r.r2), "--r-max must be below min(--r1, --r2)");
      need(r.samples >= 1 && r.samples <= 100000, "--samples must be between 1 and 100000");
      need(r.samples == 1 || r.r_max > r.r_min, "several samples need --r-max > --r-min");
      break;
  }
}

}  // namespace detail

inline std::string usage() {
  detail::Parser parser;
  return parser.app.help();
}

/// Parses arguments (without the program name). Unknown commands and flags,
/// malformed values and schema violations raise ValidationError carrying the
/// usage text. `--help` yields a request with `help` set.
inline CommandRequest parse_args(const std::vector<std::string>& args) {
  detail::Parser parser;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    parser.app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    CommandRequest r;
    r.help = true;
    const auto* sub = parser.chosen();
    r.help_text = sub ? sub->help() : parser.app.help();
    return r;
  } catch (const CLI::CallForAllHelp&) {
    CommandRequest r;
    r.help = true;
    r.help_text = parser.app.help("", CLI::AppFormatMode::All);
    return r;
  } catch (const CLI::CallForVersion&) {
    CommandRequest r;
    r.help = true;
    r.help_text = std::string(kVersion) + "\n";
    return r;
  } catch (const CLI::ParseError& e) {
    const auto* sub = parser.chosen();
    throw ValidationError(std::string(e.what()) + "\n\n" + (sub ? sub->help() : parser.app.help()));
  }

  CommandRequest r = parser.req;
  const auto* sub = parser.chosen();
  if (sub == parser.table) r.command = Command::table;
  if (sub == parser.candidate) {
    r.command = Command::candidate;
    r.kind = parse_candidate_kind(parser.kind);
    if (parser.a2_opt->count() > 0) r.a2 = parser.a2;
  }
  if (sub == parser.geodesic) {
    r.command = Command::geodesic;
    r.from = detail::parse_point(parser.from);
    r.to = detail::parse_point(parser.to);
  }
  if (sub == parser.verify) {
    r.command = Command::verify;
    const auto names = verify::suite_names();
    if (!r.suite.empty() && std::find(names.begin(), names.end(), r.suite) == names.end()) {
      std::string known;
      for (auto n : names) known += " " + std::string(n);
      throw ValidationError("unknown suite '" + r.suite + "'; known suites:" + known);
    }
  }
  if (sub == parser.pinch) r.command = Command::pinch;
  try {
    detail::validate(r);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(e.what()) + "\n\n" + sub->help());
  }
  return r;
}

namespace detail {

inline void write_file(const std::string& path, const std::string& text, RunReport& report) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw ValidationError("failed to write '" + path + "'");
  report.artifacts.push_back(path);
}

inline std::vector<double> p_values(double lo, double hi, double step) {
  std::vector<double> ps;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) ps.push_back(lo + step * static_cast<double>(i));
  return ps;
}

inline RunReport run_table(const CommandRequest& r) {
  RunReport rep;
  const auto table = perimeter_table(p_values(r.p_min, r.p_max, r.step), r.tol);
  const std::string text = r.format == "json" ? table_json(table, r.tol).dump(2) + "\n" : table_csv(table);
  if (r.out.empty()) {
    rep.output = text;
  } else {
    write_file(r.out, text, rep);
  }
  std::vector<std::string> failed;
  for (const auto& row : table.rows) {
    for (auto kind : kAllCandidateKinds) {
      const auto& cell = row.cell(kind);
      if (!cell.value) failed.push_back(std::string(to_string(kind)) + " p=" + format_number(row.p) + ": " + cell.error);
    }
  }
  if (failed.empty()) {
    rep.summary = std::to_string(table.rows.size() * kAllCandidateKinds.size()) + " cells computed";
  } else {
    rep.exit_code = static_cast<int>(ExitCode::numerical);
    rep.summary = std::to_string(failed.size()) + " cell(s) failed";
    for (const auto& f : failed) rep.summary += "\n  " + f;
  }
  return rep;
}

inline RunReport run_candidate(const CommandRequest& r) {
  RunReport rep;
  const double a2 = r.a2.value_or(r.a1);
  const auto c = build_candidate(r.kind, DensityExponent(r.p), r.a1, a2, r.tol);
  const std::string json = candidate_json(c).dump(2) + "\n";
  if (r.json.empty()) {
    rep.output = json;
  } else {
    write_file(r.json, json, rep);
  }
  if (!r.svg.empty()) write_file(r.svg, candidate_svg(c), rep);
  rep.summary = std::string(to_string(c.kind)) + " p=" + format_number(r.p) +
                " weighted perimeter " + format_number(c.weighted_perimeter);
  return rep;
}

inline RunReport run_geodesic(const CommandRequest& r) {
  RunReport rep;
  const DensityExponent p(r.p);
  const auto g = dbubble::geodesic(p, r.from, r.to);
  rep.output = geodesic_json(g, p).dump(2) + "\n";
  rep.summary = std::string(to_string(g.kind)) + " length " + format_number(g.weighted_length);
  return rep;
}

inline RunReport run_verify(const CommandRequest& r) {
  RunReport rep;
  const auto results = verify::run(r.suite);
  std::size_t failed = 0;
  for (const auto& pr : results) {
    rep.output += std::string(pr.passed ? "PASS " : "FAIL ") + pr.suite + "/" + pr.name + ": " + pr.detail + "\n";
    if (!pr.passed) ++failed;
  }
  rep.summary = std::to_string(results.size() - failed) + " of " + std::to_string(results.size()) + " properties pass";
  if (failed > 0) rep.exit_code = static_cast<int>(ExitCode::numerical);
  return rep;
}

inline RunReport run_pinch(const CommandRequest& r) {
  RunReport rep;
  const DensityExponent p(r.p);
  const auto samples = pinch_sweep(p, r.r1, r.r2, r.r_min, r.r_max, r.samples);
  const std::string text = pinch_csv(samples);
  if (r.out.empty()) {
    rep.output = text;
  } else {
    write_file(r.out, text, rep);
  }
  std::size_t saving = 0;
  for (const auto& s : samples) saving += s.result.delta < 0.0 ? 1 : 0;
  rep.summary = std::to_string(saving) + " of " + std::to_string(samples.size()) + " radii save perimeter";
  return rep;
}

}  // namespace detail

/// Runs a parsed request. Numerical failures become exit code 2 with the
/// failing computation named; invalid input inside a computation becomes 1.
inline RunReport execute(const CommandRequest& r) {
  try {
    switch (r.command) {
      case Command::table: return detail::run_table(r);
      case Command::candidate: return detail::run_candidate(r);
      case Command::geodesic: return detail::run_geodesic(r);
      case Command::verify: return detail::run_verify(r);
      case Command::pinch: return detail::run_pinch(r);
    }
  } catch (const ValidationError& e) {
    return {static_cast<int>(ExitCode::validation), {}, e.what(), {}};
  } catch (const NumericalError& e) {
    return {static_cast<int>(ExitCode::numerical), {}, std::string("numerical failure: ") + e.what(), {}};
  }
  return {static_cast<int>(ExitCode::validation), {}, "unknown command", {}};
}

}  // namespace dbubble::cli
