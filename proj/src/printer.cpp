#include "norma/printer.hpp"

#include <sstream>

namespace norma {

namespace {

void render_term_args(std::ostringstream& out, const Atom& atom) {
  // Unfold a combined property back into the binary surface form.
  Term prop = atom.property;
  bool negated = prop.is_negated();
  if (negated) prop = prop.inner();

  out << '(';
  if (negated) out << "not_";
  if (prop.is_combined()) {
    out << prop.pred().str();
    if (atom.subject) out << ", " << atom.subject->str();
    out << ", " << prop.arg().str();
  } else {
    out << prop.str();
    if (atom.subject) out << ", " << atom.subject->str();
  }
  if (atom.time) out << ", " << atom.time->str();
  out << ')';
}

}  // namespace

std::string render_literal(const Literal& lit) {
  std::ostringstream out;
  if (!lit.positive()) out << '-';
  out << keyword(lit.atom.modality);
  render_term_args(out, lit.atom);
  return out.str();
}

namespace {

void render_conjunction(std::ostringstream& out,
                        const std::vector<Literal>& lits) {
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i) out << " & ";
    out << render_literal(lits[i]);
  }
}

}  // namespace

std::string render_rulebase(const RuleBase& rb) {
  std::ostringstream out;
  for (const auto& [name, sym] : rb.predicates) {
    out << "predicate " << name << '/' << sym.surface_arity << " layer "
        << sym.layer;
    if (sym.is_static) out << " static";
    if (sym.backward_persistent) out << " backward_persist";
    if (sym.unforeseeable) out << " unforeseeable";
    out << ".\n";
  }
  if (!rb.strict.empty()) out << '\n';
  for (const auto& rule : rb.strict) {
    out << "rule " << rule.id;
    if (rule.allow_same) out << " allow_same";
    out << " layer " << rule.layer << ": ";
    render_conjunction(out, rule.head);
    if (!rule.body.empty()) {
      out << " <- ";
      render_conjunction(out, rule.body);
    }
    out << ".\n";
  }
  bool first_default = true;
  for (const auto& rule : rb.defaults) {
    // Generated persistence defaults reappear at parse time; writing
    // them out would double them up.
    if (rule.origin != RuleOrigin::User) continue;
    if (first_default) out << '\n';
    first_default = false;
    out << "default " << rule.id;
    if (rule.allow_same) out << " allow_same";
    out << " layer " << rule.layer << ": ";
    render_conjunction(out, rule.prerequisite);
    out << " : ";
    render_conjunction(out, rule.consequent);
    if (!rule.constraint.empty()) {
      out << " [";
      render_conjunction(out, rule.constraint);
      out << ']';
    }
    out << ".\n";
  }
  return out.str();
}

std::string render_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "scenario " << s.label << ".\n";
  out << "agents ";
  for (size_t i = 0; i < s.agents.size(); ++i) {
    if (i) out << ", ";
    out << s.agents[i];
  }
  out << ".\n";
  out << "states 0.." << s.t_max << ".\n";
  for (const auto& fact : s.facts) {
    out << "fact " << render_literal(fact) << ".\n";
  }
  return out.str();
}

}  // namespace norma
