#pragma once

#include <string>

#include "norma/rulebase.hpp"

namespace norma {

/// Renders a rule base back to the input syntax. Materialized
/// persistence defaults are skipped; they reappear when the output is
/// parsed, so render followed by parse is the identity on the
/// structure.
std::string render_rulebase(const RuleBase& rb);

std::string render_scenario(const Scenario& s);

/// Surface form of a literal: combined properties are unfolded back to
/// binary applications, negation prints as a leading `-`.
std::string render_literal(const Literal& lit);

}  // namespace norma
