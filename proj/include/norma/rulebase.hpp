#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "norma/diagnostics.hpp"
#include "norma/logic.hpp"

namespace norma {

/// A declared surface predicate. Binary predicates are folded into
/// combined unary properties before inference; the declaration keeps
/// the surface arity so parsing and printing can unfold them again.
struct PredicateSymbol {
  std::string name;
  int surface_arity = 1;  // 1 or 2
  int layer = 1;          // 1 (kernel) .. 3
  bool is_static = false;
  bool backward_persistent = false;
  bool unforeseeable = false;

  bool kernel() const { return layer == 1; }
  bool operator==(const PredicateSymbol&) const = default;
};

/// Where a default came from. Persistence defaults are materialized
/// from predicate flags rather than written by the user, and the
/// printer omits them so a rendered rule base re-parses identically.
enum class RuleOrigin { User, ForwardPersistence, BackwardPersistence };

struct StrictRule {
  std::string id;
  int layer = 1;
  /// Permits one binding to assign the same value to several
  /// variables; by default distinct variables denote distinct objects.
  bool allow_same = false;
  std::vector<Literal> body;
  std::vector<Literal> head;

  bool operator==(const StrictRule&) const = default;
};

/// A default prereq : conseq [constraint]. The justification set is
/// conseq plus constraint; semi-normal defaults have a non-empty
/// constraint.
struct DefaultRule {
  std::string id;
  int layer = 1;
  bool allow_same = false;
  RuleOrigin origin = RuleOrigin::User;
  std::vector<Literal> prerequisite;
  std::vector<Literal> consequent;
  std::vector<Literal> constraint;

  std::vector<Literal> justifications() const;
  bool operator==(const DefaultRule&) const = default;
};

struct RuleBase {
  std::map<std::string, PredicateSymbol> predicates;
  std::vector<StrictRule> strict;
  std::vector<DefaultRule> defaults;

  const PredicateSymbol* find_predicate(const std::string& name) const;
  /// Layer of a ground property term: the declaring predicate's layer,
  /// or 1 for undeclared constants (perturbation factor names).
  int property_layer(const Term& property) const;

  bool operator==(const RuleBase&) const = default;
};

struct Scenario {
  std::string label;
  std::vector<std::string> agents;
  int t_max = 1;
  std::vector<Literal> facts;  // canonical, ground

  bool operator==(const Scenario&) const = default;
};

/// Structural checks that need both sides: every scenario fact must use
/// a declared predicate with the right surface arity, and agents must
/// not shadow predicate names.
std::vector<Diagnostic> validate_crossrefs(const RuleBase& rb,
                                           const Scenario& s);

}  // namespace norma
