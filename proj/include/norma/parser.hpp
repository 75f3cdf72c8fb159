#pragma once

#include <string>
#include <string_view>

#include "norma/diagnostics.hpp"
#include "norma/rulebase.hpp"

namespace norma {

/// Parses a rule-base file: predicate declarations, strict rules and
/// defaults. Persistence defaults implied by `static` and
/// `backward_persist` flags are materialized into the result.
Parsed<RuleBase> parse_rulebase(std::string_view text,
                                const std::string& filename = "<rules>");

/// Parses a scenario file: label, agents, state range and ground facts.
/// Facts are folded and canonicalized.
Parsed<Scenario> parse_scenario(std::string_view text,
                                const std::string& filename = "<scenario>");

Parsed<RuleBase> parse_rulebase_file(const std::string& path);
Parsed<Scenario> parse_scenario_file(const std::string& path);

}  // namespace norma
