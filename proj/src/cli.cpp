#include "norma/cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "norma/builtin.hpp"
#include "norma/diagnostics.hpp"
#include "norma/engine.hpp"
#include "norma/parser.hpp"
#include "norma/report.hpp"

namespace norma {

namespace {

constexpr int kExitAnomaly = 0;
constexpr int kExitNoAnomaly = 1;
constexpr int kExitInputError = 2;
constexpr int kExitEngineError = 3;

std::string known_builtins() {
  std::string out;
  for (const auto& name : builtin_scenario_names()) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{
      "Detects norm violations in car crash scenarios by default "
      "reasoning over a layered rule base."};
  app.name("norma");

  std::string rules_path;
  std::string scenario_path;
  std::string builtin_name;
  std::string format = "text";
  bool trace = false;
  bool all_extensions = false;
  bool no_strata = false;
  int max_extensions = 8;
  bool check_only = false;

  app.add_option("--rules", rules_path,
                 "Rule base file (defaults to the shipped crash norms)");
  app.add_option("--scenario", scenario_path, "Scenario file");
  app.add_option("--builtin", builtin_name,
                 "Shipped scenario name (" + known_builtins() + ")");
  app.add_option("--format", format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--trace", trace, "Show the derivation of each anomaly");
  app.add_flag("--all-extensions", all_extensions,
               "Enumerate every extension instead of the stratified run");
  app.add_flag("--no-strata", no_strata,
               "Single global pass instead of layer by layer");
  app.add_option("--max-extensions", max_extensions,
                 "Cap on reported extensions (default 8)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--check", check_only,
               "Validate the inputs and exit without running");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  RuleBase rules;
  if (rules_path.empty()) {
    rules = builtin_rulebase();
  } else {
    auto parsed = parse_rulebase_file(rules_path);
    if (!parsed.ok()) {
      err << render(parsed.diagnostics);
      return kExitInputError;
    }
    rules = std::move(*parsed.value);
  }

  if (!scenario_path.empty() && !builtin_name.empty()) {
    err << "error: --scenario and --builtin are mutually exclusive\n";
    return kExitInputError;
  }

  std::optional<Scenario> scenario;
  if (!scenario_path.empty()) {
    auto parsed = parse_scenario_file(scenario_path);
    if (!parsed.ok()) {
      err << render(parsed.diagnostics);
      return kExitInputError;
    }
    scenario = std::move(*parsed.value);
  } else if (!builtin_name.empty()) {
    const Scenario* found = find_builtin_scenario(builtin_name);
    if (!found) {
      err << "error: unknown builtin scenario '" << builtin_name
          << "'; available: " << known_builtins() << '\n';
      return kExitInputError;
    }
    scenario = *found;
  }

  if (scenario) {
    auto issues = validate_crossrefs(rules, *scenario);
    if (!issues.empty()) {
      err << render(issues);
      return kExitInputError;
    }
  }

  if (check_only) {
    out << "ok\n";
    return 0;
  }

  if (!scenario) {
    err << "error: a scenario is required (--scenario or --builtin)\n";
    return kExitInputError;
  }

  RunOptions options;
  options.use_strata = !no_strata;
  options.all_extensions = all_extensions;
  options.engine.max_extensions = max_extensions;

  RunResult result;
  try {
    result = run_strata(rules, *scenario, options);
  } catch (const EngineError& e) {
    err << "engine error: " << e.what() << '\n';
    return kExitEngineError;
  }

  std::vector<std::string> warnings;
  auto anomalies = collect_anomalies(result, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  RenderOptions render_options;
  render_options.json = format == "json";
  render_options.trace = trace;
  out << render_report(result, anomalies, render_options);

  switch (result.status) {
    case Status::AnomalyFound: return kExitAnomaly;
    case Status::NoAnomaly: return kExitNoAnomaly;
    case Status::InconsistentFacts: return kExitEngineError;
    case Status::ExtensionLimitHit: return kExitEngineError;
  }
  return kExitEngineError;
}

}  // namespace norma
