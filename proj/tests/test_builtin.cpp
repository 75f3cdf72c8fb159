#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "norma/builtin.hpp"
#include "norma/engine.hpp"

using namespace norma;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "missing file: " << path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string source_path(const std::string& rel) {
  return std::string(NORMA_SOURCE_DIR) + "/" + rel;
}

}  // namespace

TEST_CASE("the shipped data files match the embedded copies byte for byte") {
  CHECK(slurp(source_path("kb/crash_norms.nrk")) == builtin_rulebase_text());
  CHECK(slurp(source_path("kb/catalogue.tsv")) == catalogue_text());
  for (const auto& name : builtin_scenario_names()) {
    CAPTURE(name);
    const std::string* text = builtin_scenario_text(name);
    REQUIRE(text != nullptr);
    CHECK(slurp(source_path("scenarios/" + name + ".scn")) == *text);
  }
}

TEST_CASE("five scenarios ship and all parse against the rule base") {
  auto names = builtin_scenario_names();
  CHECK(names == std::vector<std::string>{"b21", "b21_no_control", "bend",
                                          "calm", "perturb"});
  const RuleBase& rb = builtin_rulebase();
  for (const auto& [name, s] : builtin_scenarios()) {
    CAPTURE(name);
    CHECK(s.label == name);
    CHECK(s.t_max >= 1);
    CHECK_FALSE(s.agents.empty());
    CHECK(validate_crossrefs(rb, s).empty());
  }
  CHECK(find_builtin_scenario("nope") == nullptr);
}

TEST_CASE("every rule and default has a catalogue entry") {
  const RuleBase& rb = builtin_rulebase();
  std::set<std::string> ids;
  for (const auto& e : catalogue()) {
    CHECK_FALSE(e.location.empty());
    CHECK_FALSE(e.quote.empty());
    CHECK_FALSE(e.gloss.empty());
    ids.insert(e.id);
  }
  for (const auto& r : rb.strict) {
    CAPTURE(r.id);
    CHECK(ids.count(r.id));
  }
  for (const auto& d : rb.defaults) {
    CAPTURE(d.id);
    CHECK(ids.count(d.id));
  }
}

TEST_CASE("catalogue lookups return the row") {
  const CatalogueEntry* d2 = catalogue_lookup("d2");
  REQUIRE(d2 != nullptr);
  CHECK(d2->quote.find("unless") != std::string::npos);
  const CatalogueEntry* rf = catalogue_lookup("rf");
  REQUIRE(rf != nullptr);
  CHECK(rf->quote.find("Basic-Anomaly") != std::string::npos);
  CHECK(catalogue_lookup("zzz") == nullptr);
}

TEST_CASE("the kernel covers the anomaly-bearing properties") {
  const RuleBase& rb = builtin_rulebase();
  std::set<std::string> kernel;
  for (const auto& [name, sym] : rb.predicates)
    if (sym.kernel()) kernel.insert(name);
  CHECK(kernel == std::set<std::string>{"stops", "starts", "runs_slowly",
                                        "runs_backwards", "control",
                                        "changes_speed", "disruptive_factor"});
  CHECK(rb.find_predicate("disruptive_factor")->unforeseeable);
  CHECK(rb.find_predicate("parked")->is_static);
  CHECK(rb.find_predicate("is_follower")->backward_persistent);
}
