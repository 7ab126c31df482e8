#include "cheeger/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cheeger/convex_cheeger.hpp"
#include "cheeger/corpus.hpp"
#include "cheeger/error.hpp"
#include "cheeger/grid_cheeger.hpp"
#include "cheeger/report.hpp"
#include "cheeger/rof.hpp"
#include "cheeger/strips.hpp"

namespace cheeger {

namespace {

struct Options {
  std::string domain_path;
  std::string example;
  double resolution = 256.0;
  int neighborhood = 16;
  std::vector<double> lambdas;
  std::string svg_path;
  std::string json_path;
  bool check_bounds = false;
  bool timings = false;
};

class Stopwatch {
public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

DomainSpec load_domain(const Options& o) {
  if (!o.example.empty()) return builtin_example(o.example);
  return parse_domain(o.domain_path, o.resolution);
}

CheegerResult solve_convex(const DomainSpec& domain) {
  const auto body = as_convex_body(domain);
  if (!body) throw Error(Errc::not_convex, "domain is not a convex polygon or a single disk");
  return cheeger_set(*body);
}

CheegerResult solve_grid(const DomainSpec& domain, const Options& o) {
  const GridDomain grid = rasterize(domain, o.resolution);
  return dinkelbach_solve(grid, neighborhood_weights(o.neighborhood, grid.spacing()));
}

CheegerResult solve_strip(const DomainSpec& domain, const Options& o) {
  const auto* s = std::get_if<StripShape>(&domain.shape);
  if (!s) throw Error(Errc::invalid_body, "strip command needs a strip domain");
  // --resolution counts cells per input unit across the width 2 * halfwidth.
  const int cells = std::max(64, static_cast<int>(std::lround(2.0 * s->halfwidth * o.resolution)));
  return strip_cheeger(build_strip(s->spine, s->halfwidth), cells);
}

// Convex solver when it applies, the strip solver for strips, else the grid.
CheegerResult solve_auto(const DomainSpec& domain, const Options& o) {
  if (as_convex_body(domain)) return solve_convex(domain);
  if (std::holds_alternative<StripShape>(domain.shape)) return solve_strip(domain, o);
  return solve_grid(domain, o);
}

void expected_checks(const DomainSpec& domain, const CheegerResult& result, std::vector<Check>& checks) {
  const double rel = result.method == Method::convex_exact ? 1e-9 : 3e-2;
  if (const auto it = domain.expected.find("h"); it != domain.expected.end()) {
    const double err = std::abs(result.h - it->second);
    checks.push_back({"expected_h", err <= rel * it->second, result.h, it->second, rel * it->second - err});
  }
  if (const auto it = domain.expected.find("ratio"); it != domain.expected.end()) {
    const Measures m = domain_measures(domain);
    const double ratio = m.perimeter / m.area;
    const double err = std::abs(ratio - it->second);
    checks.push_back({"expected_domain_ratio", err <= 1e-12 * it->second, ratio, it->second, 1e-12 * it->second - err});
  }
  if (const auto it = domain.expected.find("h_triangle"); it != domain.expected.end()) {
    checks.push_back({"below_triangle", result.h < it->second, result.h, it->second, it->second - result.h});
  }
}

void emit(const Options& o, RunReport& report, const DomainSpec* domain, const CheegerResult* result, Stopwatch& clock,
          std::ostream& out) {
  if (!o.svg_path.empty() && domain && result) {
    write_text_file(o.svg_path, render_svg(*domain, *result));
    report.timings_ms.emplace_back("render", clock.lap());
  }
  const std::string json = to_json(report, o.timings);
  if (!o.json_path.empty()) write_text_file(o.json_path, json);
  else out << json;
}

int run_solve(const std::string& command, const Options& o, std::ostream& out) {
  Stopwatch clock;
  const DomainSpec domain = load_domain(o);
  const double parse_ms = clock.lap();

  CheegerResult result;
  if (command == "convex") result = solve_convex(domain);
  else if (command == "grid") result = solve_grid(domain, o);
  else if (command == "strip") result = solve_strip(domain, o);
  else result = solve_auto(domain, o);
  const double solve_ms = clock.lap();

  RunReport report = make_report(command, domain, result);
  report.checks = verify_result(result, domain).checks;
  if (command == "example") expected_checks(domain, result, report.checks);
  if (command == "strip" && o.check_bounds) {
    const double L = result.diagnostics.at("length");
    const double err = std::abs(result.h - result.diagnostics.at("asymptotic"));
    report.checks.push_back({"strip_asymptotic", err <= 2.0 / (L * L), result.h, result.diagnostics.at("asymptotic"),
                             2.0 / (L * L) - err});
  }
  report.timings_ms = {{"parse", parse_ms}, {"solve", solve_ms}, {"verify", clock.lap()}};
  emit(o, report, &domain, &result, clock, out);
  return report.checks_pass() ? kExitOk : kExitCheckFailed;
}

int run_rof(const Options& o, std::ostream& out) {
  Stopwatch clock;
  const DomainSpec domain = load_domain(o);
  const double parse_ms = clock.lap();
  const std::vector<double> lambdas = o.lambdas.empty() ? std::vector<double>{0.1, 0.25, 0.4} : o.lambdas;
  for (const double l : lambdas) {
    if (!(l > 0.0)) throw Error(Errc::invalid_body, "lambda must be positive");
  }
  const CalibrabilityReport cal = calibrability_test(domain, lambdas, o.resolution);
  const double solve_ms = clock.lap();

  RunReport report;
  report.command = "rof";
  report.domain_name = domain.name;
  report.variant = variant_name(domain);
  report.domain = domain_measures(domain);
  report.method = "rof_dual_projection";
  report.rof = cal;
  report.notes.emplace_back(cal.consistent ? "consistent with calibrable" : "not consistent with calibrable");
  for (const auto& e : cal.entries) {
    const std::string tag = "lambda=" + std::to_string(e.lambda);
    const double high = e.sup_norm - 1.0;
    report.checks.push_back({"maximum_principle_upper(" + tag + ")", high <= 1e-6, e.sup_norm, 1.0, 1e-6 - high});
    report.checks.push_back({"maximum_principle_lower(" + tag + ")", e.min_value >= -1e-6, e.min_value, 0.0,
                             e.min_value + 1e-6});
  }
  report.timings_ms = {{"parse", parse_ms}, {"solve", solve_ms}};
  emit(o, report, nullptr, nullptr, clock, out);
  return report.checks_pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cheeger constants and Cheeger sets of planar domains"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool needs_domain) {
    auto* path = sub->add_option("domain", o.domain_path, "Domain file (.json or .pgm)");
    auto* example = sub->add_option("--example", o.example, "Built-in example name");
    if (needs_domain) {
      path->excludes(example);
      example->excludes(path);
    }
    sub->add_option("--resolution", o.resolution, "Cells per unit length")->check(CLI::PositiveNumber);
    sub->add_option("--svg", o.svg_path, "Write an SVG figure");
    sub->add_option("--json", o.json_path, "Write the JSON report here instead of standard output");
    sub->add_flag("--timings", o.timings, "Include stage timings in the JSON report");
  };

  auto* convex = app.add_subcommand("convex", "Exact solver for convex polygons and disks");
  add_common(convex, true);
  auto* grid = app.add_subcommand("grid", "Parametric max-flow solver on a lattice");
  add_common(grid, true);
  grid->add_option("--neighborhood", o.neighborhood, "Neighbourhood order")->check(CLI::IsMember({4, 8, 16}));
  auto* strip = app.add_subcommand("strip", "Inner Cheeger formula on a strip");
  add_common(strip, true);
  strip->add_flag("--check-bounds", o.check_bounds, "Also check the asymptotic estimate");
  auto* rof = app.add_subcommand("rof", "ROF calibrability test");
  add_common(rof, true);
  rof->add_option("--lambda", o.lambdas, "Fidelity weights (repeatable)");
  auto* example = app.add_subcommand("example", "Solve a built-in example");
  add_common(example, true);
  example->add_option("--neighborhood", o.neighborhood, "Neighbourhood order")->check(CLI::IsMember({4, 8, 16}));
  auto* verify = app.add_subcommand("verify", "Solve with the default method and report the checks");
  add_common(verify, true);
  verify->add_option("--neighborhood", o.neighborhood, "Neighbourhood order")->check(CLI::IsMember({4, 8, 16}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << "\n" << kDomainSchema;
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All) << "\n" << kDomainSchema;
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help() << "\n" << kDomainSchema;
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  if (command == "example" && o.example.empty()) std::swap(o.example, o.domain_path);
  if (o.domain_path.empty() && o.example.empty()) {
    err << "usage error: " << command << " needs a domain file or --example <name>\n\n" << kDomainSchema;
    return kExitUsage;
  }

  try {
    if (command == "rof") return run_rof(o, out);
    return run_solve(command, o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace cheeger
