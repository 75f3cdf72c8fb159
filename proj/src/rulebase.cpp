#include "norma/rulebase.hpp"

#include <sstream>

namespace norma {

std::vector<Literal> DefaultRule::justifications() const {
  std::vector<Literal> out = consequent;
  out.insert(out.end(), constraint.begin(), constraint.end());
  return out;
}

const PredicateSymbol* RuleBase::find_predicate(const std::string& name) const {
  auto it = predicates.find(name);
  return it == predicates.end() ? nullptr : &it->second;
}

int RuleBase::property_layer(const Term& property) const {
  // Combined properties take the layer of their base predicate.
  // Undeclared constants (perturbation factor names) sit in the kernel.
  const Term& base = property.is_combined() ? property.pred() : property;
  if (base.is_constant()) {
    if (const auto* sym = find_predicate(base.name())) return sym->layer;
  }
  return 1;
}

namespace {

// Number of term arguments a canonical fact supplies for a predicate:
// a combined property consumed one surface argument already.
int surface_arity_of(const Atom& atom) {
  int n = atom.subject ? 1 : 0;
  if (atom.property.is_combined()) n += 1;
  return n;
}

}  // namespace

std::vector<Diagnostic> validate_crossrefs(const RuleBase& rb,
                                           const Scenario& s) {
  std::vector<Diagnostic> out;
  auto complain = [&](const std::string& msg) {
    out.push_back(Diagnostic{s.label.empty() ? "<scenario>" : s.label, 0, 0, msg});
  };

  for (const auto& agent : s.agents) {
    if (rb.find_predicate(agent)) {
      complain("agent '" + agent + "' collides with a declared predicate name");
    }
  }

  for (const auto& fact : s.facts) {
    const Atom& atom = fact.atom;
    Term prop = atom.property.is_negated() ? atom.property.inner() : atom.property;
    const Term& base = prop.is_combined() ? prop.pred() : prop;
    if (!base.is_constant()) continue;

    const PredicateSymbol* sym = rb.find_predicate(base.name());
    bool needs_declaration = atom.modality == Modality::Holds ||
                             atom.modality == Modality::MustDo ||
                             atom.modality == Modality::AbleToDo ||
                             atom.modality == Modality::Normally ||
                             atom.modality == Modality::Static;
    if (!sym) {
      if (needs_declaration) {
        complain("fact uses undeclared predicate '" + base.name() + "'");
      }
      continue;
    }
    int got = surface_arity_of(atom);
    if (atom.modality != Modality::Static && got != sym->surface_arity) {
      std::ostringstream msg;
      msg << "fact '" << fact.str() << "' uses predicate '" << base.name()
          << "' with " << got << " argument" << (got == 1 ? "" : "s")
          << ", declared arity is " << sym->surface_arity;
      complain(msg.str());
    }
  }
  return out;
}

}  // namespace norma
