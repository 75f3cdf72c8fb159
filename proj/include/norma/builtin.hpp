#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "norma/rulebase.hpp"

namespace norma {

/// The shipped crash-norms rule base, parsed from the embedded text.
/// The same text lives in kb/crash_norms.nrk.
const RuleBase& builtin_rulebase();
const std::string& builtin_rulebase_text();

/// Shipped scenarios by name: b21, b21_no_control, bend, perturb, calm.
const std::map<std::string, Scenario>& builtin_scenarios();
const Scenario* find_builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();
const std::string* builtin_scenario_text(const std::string& name);

/// One catalogue row per rule or default: where the rule comes from in
/// the source analysis of crash norms, with a supporting quote.
struct CatalogueEntry {
  std::string id;
  std::string location;
  std::string quote;
  std::string gloss;
};

const std::vector<CatalogueEntry>& catalogue();
const CatalogueEntry* catalogue_lookup(const std::string& id);
const std::string& catalogue_text();

}  // namespace norma
