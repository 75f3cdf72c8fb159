#pragma once

#include <cassert>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace norma {

/// First-order terms over the reified vocabulary. A term is a constant,
/// a variable, the negation-closure marker `not_<t>`, or a combined
/// property `p#a` produced by folding a binary surface predicate.
class Term {
 public:
  enum class Kind { Constant, Variable, Negated, Combined };

  static Term constant(std::string name);
  static Term variable(std::string name);
  /// `not_t`. Collapses immediately: negated(negated(t)) == t.
  static Term negated(Term inner);
  /// `p#arg` for a binary predicate p applied to its second argument.
  /// `pred` must be a constant.
  static Term combined(Term pred, Term arg);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  Term inner() const;  // Negated
  Term pred() const;   // Combined
  Term arg() const;    // Combined

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_negated() const { return kind() == Kind::Negated; }
  bool is_combined() const { return kind() == Kind::Combined; }

  /// True when no variable occurs anywhere in the term.
  bool ground() const;

  std::string str() const;

  std::strong_ordering operator<=>(const Term& other) const;
  bool operator==(const Term& other) const;

 private:
  struct Node {
    Kind kind;
    std::string name;                // Constant, Variable
    std::shared_ptr<const Node> a;   // Negated: inner; Combined: pred
    std::shared_ptr<const Node> b;   // Combined: arg
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static std::strong_ordering cmp(const Node& x, const Node& y);

  std::shared_ptr<const Node> node_;
};

/// A time argument: either a literal state index or a variable plus a
/// small offset, as in T, T+1, T-1.
struct TimeExpr {
  static TimeExpr literal(int state);
  static TimeExpr variable(std::string name, int offset = 0);

  bool is_literal() const { return !var.has_value(); }
  int state = 0;                   // when literal
  std::optional<std::string> var;  // when symbolic
  int offset = 0;                  // in {-1, 0, +1}

  std::string str() const;
  std::strong_ordering operator<=>(const TimeExpr&) const = default;
  bool operator==(const TimeExpr&) const = default;
};

/// The reified pseudo-modal predicates.
enum class Modality {
  Holds,
  MustDo,
  AbleToDo,
  Normally,
  AbnormalPerturbation,
  Static,
  BasicAnomaly,
};

const char* keyword(Modality m);

/// An atom M(property, subject, time). Static atoms carry only the
/// property; everything else carries all three fields.
struct Atom {
  Modality modality = Modality::Holds;
  Term property = Term::constant("");
  std::optional<Term> subject;
  std::optional<TimeExpr> time;

  bool ground() const;
  std::string str() const;
  std::strong_ordering operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

struct Literal {
  enum class Sign { Pos, Neg };
  Sign sign = Sign::Pos;
  Atom atom;

  bool positive() const { return sign == Sign::Pos; }
  bool ground() const { return atom.ground(); }
  std::string str() const;
  std::strong_ordering operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

Literal pos(Atom a);
Literal neg(Atom a);

/// Rewrites a literal into canonical form: double negation markers are
/// collapsed and a negated property under HOLDS is absorbed into the
/// sign, so HOLDS(not_p, ...) and -HOLDS(p, ...) coincide.
Literal canonicalize(const Literal& lit);

/// True when the two canonical literals are complementary, i.e. share
/// an atom and differ in sign.
bool complements(const Literal& a, const Literal& b);

/// Folds a binary surface application p(x, y) at time t into the
/// canonical unary form (p#y)(x) at t. The first argument stays the
/// subject.
Atom fold_arity(Modality m, const Term& p, const Term& x, const Term& y,
                const TimeExpr& t);

/// A substitution for term variables plus resolved time variables.
struct Binding {
  std::map<std::string, Term> terms;
  std::map<std::string, int> times;

  std::string str() const;
};

Term substitute(const Term& t, const Binding& b);
std::optional<TimeExpr> substitute(const TimeExpr& t, const Binding& b);
Atom substitute(const Atom& a, const Binding& b);
Literal substitute(const Literal& l, const Binding& b);

using LiteralSet = std::set<Literal>;

/// True when the set contains a complementary pair; if so, reports the
/// first such pair in set order.
bool inconsistent(const LiteralSet& s,
                  std::pair<Literal, Literal>* witness = nullptr);

}  // namespace norma
