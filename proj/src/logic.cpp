#include "norma/logic.hpp"

#include <sstream>
#include <stdexcept>

namespace norma {

Term Term::constant(std::string name) {
  return Term(std::make_shared<Node>(Node{Kind::Constant, std::move(name), nullptr, nullptr}));
}

Term Term::variable(std::string name) {
  return Term(std::make_shared<Node>(Node{Kind::Variable, std::move(name), nullptr, nullptr}));
}

Term Term::negated(Term inner) {
  if (inner.is_negated()) return inner.inner();
  return Term(std::make_shared<Node>(Node{Kind::Negated, {}, inner.node_, nullptr}));
}

Term Term::combined(Term pred, Term arg) {
  assert(pred.is_constant() && "combined property needs a constant predicate");
  return Term(std::make_shared<Node>(Node{Kind::Combined, {}, pred.node_, arg.node_}));
}

Term Term::inner() const {
  assert(is_negated());
  return Term(node_->a);
}

Term Term::pred() const {
  assert(is_combined());
  return Term(node_->a);
}

Term Term::arg() const {
  assert(is_combined());
  return Term(node_->b);
}

bool Term::ground() const {
  switch (kind()) {
    case Kind::Constant: return true;
    case Kind::Variable: return false;
    case Kind::Negated: return Term(node_->a).ground();
    case Kind::Combined: return Term(node_->a).ground() && Term(node_->b).ground();
  }
  return false;
}

std::string Term::str() const {
  switch (kind()) {
    case Kind::Constant:
    case Kind::Variable:
      return name();
    case Kind::Negated:
      return "not_" + Term(node_->a).str();
    case Kind::Combined:
      return Term(node_->a).str() + "#" + Term(node_->b).str();
  }
  return {};
}

std::strong_ordering Term::cmp(const Node& x, const Node& y) {
  if (x.kind != y.kind) return x.kind <=> y.kind;
  switch (x.kind) {
    case Kind::Constant:
    case Kind::Variable:
      return x.name <=> y.name;
    case Kind::Negated:
      return cmp(*x.a, *y.a);
    case Kind::Combined: {
      auto c = cmp(*x.a, *y.a);
      if (c != 0) return c;
      return cmp(*x.b, *y.b);
    }
  }
  return std::strong_ordering::equal;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  return cmp(*node_, *other.node_);
}

bool Term::operator==(const Term& other) const {
  return (*this <=> other) == 0;
}

TimeExpr TimeExpr::literal(int state) {
  TimeExpr t;
  t.state = state;
  return t;
}

TimeExpr TimeExpr::variable(std::string name, int offset) {
  TimeExpr t;
  t.var = std::move(name);
  t.offset = offset;
  return t;
}

std::string TimeExpr::str() const {
  if (is_literal()) return std::to_string(state);
  std::string s = *var;
  if (offset > 0) s += "+" + std::to_string(offset);
  if (offset < 0) s += std::to_string(offset);
  return s;
}

const char* keyword(Modality m) {
  switch (m) {
    case Modality::Holds: return "holds";
    case Modality::MustDo: return "must";
    case Modality::AbleToDo: return "able";
    case Modality::Normally: return "normally";
    case Modality::AbnormalPerturbation: return "perturb";
    case Modality::Static: return "static";
    case Modality::BasicAnomaly: return "b_an";
  }
  return "?";
}

bool Atom::ground() const {
  if (!property.ground()) return false;
  if (subject && !subject->ground()) return false;
  if (time && !time->is_literal()) return false;
  return true;
}

std::string Atom::str() const {
  std::ostringstream out;
  out << keyword(modality) << '(' << property.str();
  if (subject) out << ", " << subject->str();
  if (time) out << ", " << time->str();
  out << ')';
  return out.str();
}

std::string Literal::str() const {
  return (sign == Sign::Neg ? "-" : "") + atom.str();
}

Literal pos(Atom a) { return Literal{Literal::Sign::Pos, std::move(a)}; }
Literal neg(Atom a) { return Literal{Literal::Sign::Neg, std::move(a)}; }

Literal canonicalize(const Literal& lit) {
  Literal out = lit;
  // Term construction already collapses double negation markers, so
  // the only remaining rewrite is absorbing a top-level negated
  // property under HOLDS into the literal's sign.
  if (out.atom.modality == Modality::Holds && out.atom.property.is_negated()) {
    out.atom.property = out.atom.property.inner();
    out.sign = out.positive() ? Literal::Sign::Neg : Literal::Sign::Pos;
  }
  return out;
}

bool complements(const Literal& a, const Literal& b) {
  Literal ca = canonicalize(a);
  Literal cb = canonicalize(b);
  return ca.sign != cb.sign && ca.atom == cb.atom;
}

Atom fold_arity(Modality m, const Term& p, const Term& x, const Term& y,
                const TimeExpr& t) {
  Atom a;
  a.modality = m;
  a.property = Term::combined(p, y);
  a.subject = x;
  a.time = t;
  return a;
}

std::string Binding::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, value] : terms) {
    if (!first) out << ',';
    first = false;
    out << name << '=' << value.str();
  }
  for (const auto& [name, value] : times) {
    if (!first) out << ',';
    first = false;
    out << name << '=' << value;
  }
  return out.str();
}

Term substitute(const Term& t, const Binding& b) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Variable: {
      auto it = b.terms.find(t.name());
      return it == b.terms.end() ? t : it->second;
    }
    case Term::Kind::Negated:
      return Term::negated(substitute(t.inner(), b));
    case Term::Kind::Combined:
      return Term::combined(substitute(t.pred(), b), substitute(t.arg(), b));
  }
  return t;
}

std::optional<TimeExpr> substitute(const TimeExpr& t, const Binding& b) {
  if (t.is_literal()) return t;
  auto it = b.times.find(*t.var);
  if (it == b.times.end()) return t;
  return TimeExpr::literal(it->second + t.offset);
}

Atom substitute(const Atom& a, const Binding& b) {
  Atom out = a;
  out.property = substitute(a.property, b);
  if (a.subject) out.subject = substitute(*a.subject, b);
  if (a.time) out.time = substitute(*a.time, b);
  return out;
}

Literal substitute(const Literal& l, const Binding& b) {
  return Literal{l.sign, substitute(l.atom, b)};
}

bool inconsistent(const LiteralSet& s, std::pair<Literal, Literal>* witness) {
  for (const auto& lit : s) {
    if (!lit.positive()) continue;
    Literal flipped = lit;
    flipped.sign = Literal::Sign::Neg;
    if (s.count(flipped)) {
      if (witness) *witness = {lit, flipped};
      return true;
    }
  }
  return false;
}

}  // namespace norma
