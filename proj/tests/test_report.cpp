#include <doctest.h>

#include <json.hpp>

#include "norma/builtin.hpp"
#include "norma/parser.hpp"
#include "norma/printer.hpp"
#include "norma/report.hpp"

using namespace norma;

namespace {

RunResult run_builtin(const std::string& name) {
  const Scenario* s = find_builtin_scenario(name);
  REQUIRE(s != nullptr);
  return run_strata(builtin_rulebase(), *s);
}

bool has_support(const AnomalyReport& report, const std::string& rendered,
                 const std::string& rule) {
  for (const auto& [premise, via] : report.support) {
    if (render_literal(premise) == rendered && via == rule) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("the rear-end anomaly is reported as a norm violation") {
  RunResult result = run_builtin("b21");
  std::vector<std::string> warnings;
  auto reports = collect_anomalies(result, &warnings);
  CHECK(warnings.empty());
  REQUIRE(reports.size() == 1);
  const AnomalyReport& r = reports[0];

  CHECK(r.kind == AnomalyReport::Kind::F);
  CHECK(r.predicate == "stops");
  CHECK(r.agent == "B");
  CHECK(r.state == 1);
  REQUIRE(r.transition.has_value());
  CHECK(*r.transition == std::pair<int, int>{1, 2});
  CHECK(explain(r) == "because vehicle B did not stop at state 2");

  CHECK(has_support(r, "must(stops, B, 1)", "d2"));
  CHECK(has_support(r, "able(stops, B, 1)", "r4"));
  CHECK(has_support(r, "-holds(stops, B, 2)", "r1"));
}

TEST_CASE("a disruptive factor is reported as a perturbation") {
  RunResult result = run_builtin("perturb");
  auto reports = collect_anomalies(result);
  REQUIRE(reports.size() == 1);
  const AnomalyReport& r = reports[0];

  CHECK(r.kind == AnomalyReport::Kind::FPrime);
  CHECK(r.predicate == "slippery");
  CHECK(r.agent == "D");
  CHECK(r.state == 1);
  CHECK_FALSE(r.transition.has_value());
  CHECK(explain(r) ==
        "because of an abnormal perturbation (slippery) affecting vehicle D "
        "at state 1");
  CHECK(has_support(r, "perturb(slippery, D, 1)", "rb1"));
}

TEST_CASE("the bend scenario reads as an unfulfilled slow-down duty") {
  auto reports = collect_anomalies(run_builtin("bend"));
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].predicate == "runs_slowly");
  CHECK(explain(reports[0]) ==
        "because vehicle C did not slow down at state 2");
}

TEST_CASE("explanations cover the kernel verbs") {
  AnomalyReport r;
  r.kind = AnomalyReport::Kind::F;
  r.agent = "A";
  r.state = 0;
  r.predicate = "starts";
  CHECK(explain(r) == "because vehicle A did not start at state 1");
  r.predicate = "runs_backwards";
  CHECK(explain(r) == "because vehicle A did not back up at state 1");
  r.predicate = "control";
  CHECK(explain(r) == "because vehicle A did not keep control at state 1");
  r.predicate = "changes_speed";
  CHECK(explain(r) == "because vehicle A did not do changes_speed at state 1");
}

TEST_CASE("anomalies in different transitions carry a warning and sort order") {
  auto parsed = parse_scenario(
      "scenario twobends.\n"
      "agents C, D.\n"
      "states 0..2.\n"
      "fact holds(bend, C, 1).\n"
      "fact -holds(control, C, 2).\n"
      "fact holds(bend, D, 0).\n"
      "fact -holds(control, D, 1).\n"
      "fact holds(control, D, 0).\n",
      "twobends");
  REQUIRE(parsed.ok());
  RunResult result = run_strata(builtin_rulebase(), *parsed.value);
  REQUIRE(result.status == Status::AnomalyFound);

  std::vector<std::string> warnings;
  auto reports = collect_anomalies(result, &warnings);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].agent == "D");
  CHECK(reports[0].state == 0);
  CHECK(reports[1].agent == "C");
  CHECK(reports[1].state == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("different transitions") != std::string::npos);
}

TEST_CASE("text reports lead with the explanation") {
  RunResult result = run_builtin("b21");
  auto reports = collect_anomalies(result);
  std::string text = render_report(result, reports);

  CHECK(text.rfind("because vehicle B did not stop at state 2\n", 0) == 0);
  CHECK(text.find("status: anomaly_found") != std::string::npos);
  CHECK(text.find("anomaly: b_an(stops, B, 1)") != std::string::npos);
  CHECK(text.find("  kind: norm violation") != std::string::npos);
  CHECK(text.find("  transition: state 1 -> state 2") != std::string::npos);
  CHECK(text.find("  support: must(stops, B, 1) (d2)") != std::string::npos);
  CHECK(text.find("extensions: 1") != std::string::npos);
  CHECK(text.find("strata: 3 (+0) | 2 (+4) | 1 (+26, anomaly)") !=
        std::string::npos);
  CHECK(text.find("trace:") == std::string::npos);

  SUBCASE("the trace option appends the derivation tree") {
    RenderOptions with_trace;
    with_trace.trace = true;
    std::string traced = render_report(result, reports, with_trace);
    CHECK(traced.find("trace:\n") != std::string::npos);
    CHECK(traced.find("b_an(stops, B, 1) [rf]") != std::string::npos);
    CHECK(traced.find("holds(is_follower, B, A, 1) [backpersist_is_follower]") !=
          std::string::npos);
    CHECK(traced.find("(given)") != std::string::npos);
  }

  SUBCASE("rendering is deterministic") {
    CHECK(render_report(result, reports) == text);
  }
}

TEST_CASE("a calm scenario renders a negative finding") {
  RunResult result = run_builtin("calm");
  auto reports = collect_anomalies(result);
  CHECK(reports.empty());
  std::string text = render_report(result, reports);
  CHECK(text.rfind("no anomaly found\n", 0) == 0);
  CHECK(text.find("status: no_anomaly") != std::string::npos);
  CHECK(text.find("anomaly:") == std::string::npos);
}

TEST_CASE("inconsistent facts render the clashing pair") {
  auto rb = parse_rulebase("predicate q/1 layer 1.\n", "inline");
  REQUIRE(rb.ok());
  auto s = parse_scenario(
      "scenario s.\nagents F.\nstates 0..1.\n"
      "fact holds(q, F, 0).\nfact -holds(q, F, 0).\n",
      "inline");
  REQUIRE(s.ok());
  RunResult result = run_strata(*rb.value, *s.value);
  auto reports = collect_anomalies(result);
  CHECK(reports.empty());
  std::string text = render_report(result, reports);
  CHECK(text.rfind("the facts are inconsistent\n", 0) == 0);
  CHECK(text.find("conflict: holds(q, F, 0) vs -holds(q, F, 0)") !=
        std::string::npos);
  CHECK(text.find("status: inconsistent_facts") != std::string::npos);
}

TEST_CASE("json reports are machine readable and stable") {
  RunResult result = run_builtin("b21");
  auto reports = collect_anomalies(result);
  RenderOptions options;
  options.json = true;
  std::string text = render_report(result, reports, options);
  CHECK(render_report(result, reports, options) == text);

  auto doc = nlohmann::json::parse(text);
  CHECK(doc["status"] == "anomaly_found");
  REQUIRE(doc["anomalies"].size() == 1);
  const auto& a = doc["anomalies"][0];
  CHECK(a["kind"] == "norm_violation");
  CHECK(a["predicate"] == "stops");
  CHECK(a["agent"] == "B");
  CHECK(a["state"] == 1);
  CHECK(a["transition"] == nlohmann::json({1, 2}));
  CHECK(a["explanation"] == "because vehicle B did not stop at state 2");
  CHECK(a["support"].is_array());
  CHECK(doc["extensions_count"] == 1);
  REQUIRE(doc["stratum_log"].size() == 3);
  CHECK(doc["stratum_log"][0]["stratum"] == 3);
  CHECK(doc["stratum_log"][2]["anomaly"] == true);
  CHECK_FALSE(doc.contains("trace"));

  SUBCASE("the trace lands in the json when asked for") {
    options.trace = true;
    auto traced = nlohmann::json::parse(render_report(result, reports, options));
    REQUIRE(traced.contains("trace"));
    const auto& entry = traced["trace"]["b_an(stops, B, 1)"];
    CHECK(entry["source"] == "rule");
    CHECK(entry["rule"] == "rf");
    CHECK(entry["premises"].size() == 3);
  }

  SUBCASE("a perturbation reports without a transition") {
    RunResult p = run_builtin("perturb");
    auto pr = collect_anomalies(p);
    auto pdoc = nlohmann::json::parse(render_report(p, pr, options));
    CHECK(pdoc["anomalies"][0]["kind"] == "abnormal_perturbation");
    CHECK_FALSE(pdoc["anomalies"][0].contains("transition"));
  }
}
