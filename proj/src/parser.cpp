#include "norma/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace norma {
namespace {

enum class Tok {
  Ident, Int, Dot, DotDot, Colon, Arrow, Amp, LParen, RParen,
  Comma, LBracket, RBracket, Slash, Minus, Plus, End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int value = 0;
  int line = 1;
  int col = 1;
};

struct ParseError {
  Diagnostic diag;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string filename)
      : text_(text), filename_(std::move(filename)) {}

  std::vector<Token> run(std::vector<Diagnostic>& diagnostics) {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (pos_ >= text_.size()) break;
      int line = line_, col = col_;
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(Token{Tok::Ident, ident(), 0, line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(Token{Tok::Int, {}, number(), line, col});
      } else {
        Tok kind;
        switch (c) {
          case '.':
            advance();
            if (pos_ < text_.size() && text_[pos_] == '.') {
              advance();
              kind = Tok::DotDot;
            } else {
              kind = Tok::Dot;
            }
            out.push_back(Token{kind, {}, 0, line, col});
            continue;
          case ':': kind = Tok::Colon; break;
          case '&': kind = Tok::Amp; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          case ',': kind = Tok::Comma; break;
          case '[': kind = Tok::LBracket; break;
          case ']': kind = Tok::RBracket; break;
          case '/': kind = Tok::Slash; break;
          case '-': kind = Tok::Minus; break;
          case '+': kind = Tok::Plus; break;
          case '<':
            advance();
            if (pos_ < text_.size() && text_[pos_] == '-') {
              advance();
              out.push_back(Token{Tok::Arrow, {}, 0, line, col});
              continue;
            }
            diagnostics.push_back(
                Diagnostic{filename_, line, col, "expected '<-'"});
            continue;
          default:
            diagnostics.push_back(Diagnostic{
                filename_, line, col,
                std::string("unexpected character '") + c + "'"});
            advance();
            continue;
        }
        advance();
        out.push_back(Token{kind, {}, 0, line, col});
      }
    }
    out.push_back(Token{Tok::End, {}, 0, line_, col_});
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string ident() {
    std::string s;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        s += c;
        advance();
      } else {
        break;
      }
    }
    return s;
  }

  int number() {
    long v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000) v = 1000000;
      advance();
    }
    return static_cast<int>(v);
  }

  std::string_view text_;
  std::string filename_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool uppercase_start(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

std::optional<Modality> modality_from(const std::string& word) {
  static const std::map<std::string, Modality> table = {
      {"holds", Modality::Holds},
      {"must", Modality::MustDo},
      {"able", Modality::AbleToDo},
      {"normally", Modality::Normally},
      {"perturb", Modality::AbnormalPerturbation},
      {"static", Modality::Static},
      {"b_an", Modality::BasicAnomaly},
  };
  auto it = table.find(word);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

// Variable sorts inside one rule; a name may not be both.
enum class VarSort { Object, Time };

struct LiteralContext {
  // Rules allow variables and check property declarations against the
  // registry; scenario facts are ground and registry free.
  bool in_rule = true;
  const RuleBase* registry = nullptr;
  const std::vector<std::string>* agents = nullptr;
  int t_max = -1;
  std::map<std::string, VarSort>* vars = nullptr;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string filename,
         std::vector<Diagnostic>& diagnostics)
      : tokens_(std::move(tokens)),
        filename_(std::move(filename)),
        diagnostics_(diagnostics) {}

 protected:
  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  bool at(Tok kind) const { return peek().kind == kind; }

  bool accept(Tok kind) {
    if (!at(kind)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const Token& tok, const std::string& message) {
    throw ParseError{Diagnostic{filename_, tok.line, tok.col, message}};
  }

  Token expect(Tok kind, const std::string& what) {
    if (!at(kind)) fail(peek(), "expected " + what);
    return next();
  }

  Token expect_ident(const std::string& what) {
    if (!at(Tok::Ident)) fail(peek(), "expected " + what);
    return next();
  }

  Token expect_keyword(const std::string& word) {
    if (!at(Tok::Ident) || peek().text != word)
      fail(peek(), "expected '" + word + "'");
    return next();
  }

  void expect_dot() { expect(Tok::Dot, "'.'"); }

  // Skips past the next '.' so parsing can continue with the
  // following statement.
  void synchronize() {
    while (!at(Tok::End)) {
      if (next().kind == Tok::Dot) return;
    }
  }

  void report(const Diagnostic& d) { diagnostics_.push_back(d); }

  // One argument of an atom, before slot assignment.
  struct Arg {
    enum class Kind { Name, Number, TimeVar };
    Kind kind = Kind::Name;
    std::string name;
    int value = 0;   // Number
    int offset = 0;  // TimeVar
    int line = 1, col = 1;
  };

  Arg parse_arg() {
    Arg arg;
    const Token& t = peek();
    arg.line = t.line;
    arg.col = t.col;
    if (at(Tok::Int)) {
      arg.kind = Arg::Kind::Number;
      arg.value = next().value;
      return arg;
    }
    Token id = expect_ident("an argument");
    arg.name = id.text;
    if (at(Tok::Plus) || at(Tok::Minus)) {
      bool negative = at(Tok::Minus);
      // Only a time variable takes an offset; the slot check comes
      // later, once the argument's position is known.
      ++pos_;
      Token off = expect(Tok::Int, "an offset");
      if (off.value != 1)
        fail(off, "time offset must be +1 or -1");
      arg.kind = Arg::Kind::TimeVar;
      arg.offset = negative ? -1 : 1;
      if (!uppercase_start(arg.name))
        fail(id, "time offsets apply to time variables only");
    }
    return arg;
  }

  Term note_object_var(const Arg& arg, const LiteralContext& ctx) {
    if (ctx.vars) {
      auto [it, fresh] = ctx.vars->emplace(arg.name, VarSort::Object);
      if (!fresh && it->second != VarSort::Object)
        fail(Token{Tok::Ident, arg.name, 0, arg.line, arg.col},
             "variable '" + arg.name + "' is used both as a time and an object");
    }
    return Term::variable(arg.name);
  }

  TimeExpr time_from(const Arg& arg, const LiteralContext& ctx) {
    Token here{Tok::Ident, arg.name, arg.value, arg.line, arg.col};
    switch (arg.kind) {
      case Arg::Kind::Number:
        if (ctx.t_max >= 0 && arg.value > ctx.t_max)
          fail(here, "state " + std::to_string(arg.value) +
                         " is outside 0.." + std::to_string(ctx.t_max));
        return TimeExpr::literal(arg.value);
      case Arg::Kind::TimeVar:
      case Arg::Kind::Name:
        if (!ctx.in_rule)
          fail(here, "facts take integer states, not variables");
        if (!uppercase_start(arg.name))
          fail(here, "expected a state index or a time variable");
        if (ctx.vars) {
          auto [it, fresh] = ctx.vars->emplace(arg.name, VarSort::Time);
          if (!fresh && it->second != VarSort::Time)
            fail(here, "variable '" + arg.name +
                           "' is used both as a time and an object");
        }
        return TimeExpr::variable(arg.name, arg.offset);
    }
    fail(here, "expected a state index");
  }

  Term object_from(const Arg& arg, const LiteralContext& ctx) {
    Token here{Tok::Ident, arg.name, arg.value, arg.line, arg.col};
    if (arg.kind != Arg::Kind::Name)
      fail(here, "expected a name");
    if (arg.name.rfind("not_", 0) == 0)
      fail(here, "negated properties are only allowed in the property slot of holds");
    if (uppercase_start(arg.name)) {
      if (ctx.in_rule) return note_object_var(arg, ctx);
      // Scenario facts resolve uppercase names against the agent list.
      for (const auto& a : *ctx.agents)
        if (a == arg.name) return Term::constant(arg.name);
      fail(here, "unknown agent or unbound variable '" + arg.name + "'");
    }
    return Term::constant(arg.name);
  }

  Literal parse_literal(const LiteralContext& ctx) {
    bool negated = accept(Tok::Minus);
    Token head = expect_ident("a literal");
    auto modality = modality_from(head.text);
    if (!modality)
      fail(head, "unknown literal keyword '" + head.text + "'");
    expect(Tok::LParen, "'('");

    if (*modality == Modality::Static) {
      Token name = expect_ident("a predicate name");
      if (uppercase_start(name.text))
        fail(name, "static takes a declared predicate name");
      check_declared(name, ctx, 0);
      expect(Tok::RParen, "')'");
      Atom atom;
      atom.modality = Modality::Static;
      atom.property = Term::constant(name.text);
      Literal lit = negated ? neg(atom) : pos(atom);
      return canonicalize(lit);
    }

    std::vector<Arg> args;
    args.push_back(parse_arg());
    while (accept(Tok::Comma)) args.push_back(parse_arg());
    expect(Tok::RParen, "')'");

    bool binary_shape = false;
    switch (*modality) {
      case Modality::Holds:
      case Modality::MustDo:
      case Modality::AbleToDo:
      case Modality::Normally:
        if (args.size() != 3 && args.size() != 4)
          fail(head, keyword(*modality) +
                         std::string("(...) takes 3 or 4 arguments"));
        binary_shape = args.size() == 4;
        break;
      case Modality::AbnormalPerturbation:
      case Modality::BasicAnomaly:
        if (args.size() != 3)
          fail(head, keyword(*modality) +
                         std::string("(...) takes exactly 3 arguments"));
        break;
      case Modality::Static:
        break;
    }

    // First the property, then one or two object arguments, last the
    // time.
    Arg prop_arg = args.front();
    Token prop_tok{Tok::Ident, prop_arg.name, 0, prop_arg.line, prop_arg.col};
    if (prop_arg.kind != Arg::Kind::Name)
      fail(prop_tok, "expected a property name or variable");

    bool property_negated = false;
    std::string prop_name = prop_arg.name;
    if (prop_name.rfind("not_", 0) == 0) {
      if (*modality != Modality::Holds)
        fail(prop_tok, "negated properties are restricted to holds");
      prop_name = prop_name.substr(4);
      if (prop_name.empty() || uppercase_start(prop_name))
        fail(prop_tok, "negated properties apply to predicate names only");
      property_negated = true;
    }

    Term property = Term::constant(prop_name);
    if (uppercase_start(prop_name)) {
      if (!ctx.in_rule)
        fail(prop_tok, "unknown agent or unbound variable '" + prop_name + "'");
      if (binary_shape)
        fail(prop_tok, "a binary application needs a declared predicate name");
      Arg renamed = prop_arg;
      property = note_object_var(renamed, ctx);
    } else {
      bool wants_declaration = *modality == Modality::Holds ||
                               *modality == Modality::MustDo ||
                               *modality == Modality::AbleToDo ||
                               *modality == Modality::Normally;
      if (ctx.in_rule && wants_declaration)
        check_declared(prop_tok, ctx, binary_shape ? 2 : 1);
    }

    TimeExpr time = time_from(args.back(), ctx);
    Term subject = object_from(args[1], ctx);

    Atom atom;
    atom.modality = *modality;
    atom.subject = subject;
    atom.time = time;
    if (binary_shape) {
      Term second = object_from(args[2], ctx);
      atom.property = Term::combined(property, second);
    } else {
      atom.property = property;
    }
    if (property_negated) atom.property = Term::negated(atom.property);

    Literal lit = negated ? neg(atom) : pos(atom);
    return canonicalize(lit);
  }

  void check_declared(const Token& name, const LiteralContext& ctx,
                      int wanted_arity) {
    if (!ctx.registry) return;
    const PredicateSymbol* sym = ctx.registry->find_predicate(name.text);
    if (!sym)
      fail(name, "undeclared predicate '" + name.text + "'");
    if (wanted_arity != 0 && sym->surface_arity != wanted_arity) {
      std::ostringstream msg;
      msg << "predicate '" << name.text << "' is declared with arity "
          << sym->surface_arity << ", used with arity " << wanted_arity;
      fail(name, msg.str());
    }
  }

  std::vector<Token> tokens_;
  std::string filename_;
  std::vector<Diagnostic>& diagnostics_;
  size_t pos_ = 0;
};

class RuleBaseParser : Parser {
 public:
  RuleBaseParser(std::vector<Token> tokens, std::string filename,
                 std::vector<Diagnostic>& diagnostics)
      : Parser(std::move(tokens), std::move(filename), diagnostics) {}

  RuleBase run() {
    while (!at(Tok::End)) {
      try {
        statement();
      } catch (const ParseError& e) {
        report(e.diag);
        synchronize();
      }
    }
    materialize_persistence();
    return std::move(rb_);
  }

 private:
  void statement() {
    Token head = expect_ident("'predicate', 'rule' or 'default'");
    if (head.text == "predicate") {
      predicate_decl();
    } else if (head.text == "rule") {
      strict_rule();
    } else if (head.text == "default") {
      default_rule();
    } else {
      fail(head, "expected 'predicate', 'rule' or 'default'");
    }
  }

  void predicate_decl() {
    Token name = expect_ident("a predicate name");
    if (uppercase_start(name.text))
      fail(name, "predicate names start lowercase");
    if (name.text.rfind("not_", 0) == 0)
      fail(name, "predicate names may not start with 'not_'");
    if (modality_from(name.text))
      fail(name, "'" + name.text + "' is a reserved keyword");
    if (rb_.predicates.count(name.text))
      fail(name, "duplicate declaration of predicate '" + name.text + "'");

    expect(Tok::Slash, "'/'");
    Token arity = expect(Tok::Int, "an arity");
    if (arity.value != 1 && arity.value != 2)
      fail(arity, "surface arity must be 1 or 2");
    expect_keyword("layer");
    Token layer = expect(Tok::Int, "a layer");
    if (layer.value < 1 || layer.value > 3)
      fail(layer, "layer must be 1, 2 or 3");

    PredicateSymbol sym;
    sym.name = name.text;
    sym.surface_arity = arity.value;
    sym.layer = layer.value;
    while (at(Tok::Ident)) {
      Token flag = next();
      if (flag.text == "static") {
        if (sym.is_static) fail(flag, "duplicate flag 'static'");
        sym.is_static = true;
      } else if (flag.text == "backward_persist") {
        if (sym.backward_persistent) fail(flag, "duplicate flag 'backward_persist'");
        sym.backward_persistent = true;
      } else if (flag.text == "unforeseeable") {
        if (sym.unforeseeable) fail(flag, "duplicate flag 'unforeseeable'");
        sym.unforeseeable = true;
      } else {
        fail(flag, "unknown flag '" + flag.text + "'");
      }
    }
    expect_dot();
    rb_.predicates.emplace(sym.name, sym);
  }

  struct Header {
    std::string id;
    int layer = 1;
    bool allow_same = false;
    Token id_token;
  };

  Header rule_header() {
    Header h;
    h.id_token = expect_ident("a rule id");
    h.id = h.id_token.text;
    if (uppercase_start(h.id)) fail(h.id_token, "rule ids start lowercase");
    if (!seen_ids_.insert(h.id).second)
      fail(h.id_token, "duplicate rule id '" + h.id + "'");
    if (at(Tok::Ident) && peek().text == "allow_same") {
      next();
      h.allow_same = true;
    }
    expect_keyword("layer");
    Token layer = expect(Tok::Int, "a layer");
    if (layer.value < 1 || layer.value > 3)
      fail(layer, "layer must be 1, 2 or 3");
    h.layer = layer.value;
    expect(Tok::Colon, "':'");
    return h;
  }

  std::vector<Literal> literals(const LiteralContext& ctx) {
    std::vector<Literal> out;
    out.push_back(parse_literal(ctx));
    while (accept(Tok::Amp)) out.push_back(parse_literal(ctx));
    return out;
  }

  static void collect_vars(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
      case Term::Kind::Variable: out.insert(t.name()); break;
      case Term::Kind::Negated: collect_vars(t.inner(), out); break;
      case Term::Kind::Combined:
        collect_vars(t.pred(), out);
        collect_vars(t.arg(), out);
        break;
      case Term::Kind::Constant: break;
    }
  }

  static std::set<std::string> vars_of(const std::vector<Literal>& lits) {
    std::set<std::string> out;
    for (const auto& lit : lits) {
      collect_vars(lit.atom.property, out);
      if (lit.atom.subject) collect_vars(*lit.atom.subject, out);
      if (lit.atom.time && !lit.atom.time->is_literal())
        out.insert(*lit.atom.time->var);
    }
    return out;
  }

  void strict_rule() {
    Header h = rule_header();
    std::map<std::string, VarSort> vars;
    LiteralContext ctx;
    ctx.in_rule = true;
    ctx.registry = &rb_;
    ctx.vars = &vars;

    StrictRule rule;
    rule.id = h.id;
    rule.layer = h.layer;
    rule.allow_same = h.allow_same;
    rule.head = literals(ctx);
    if (accept(Tok::Arrow)) rule.body = literals(ctx);
    expect_dot();

    if (!rule.body.empty()) {
      auto bound = vars_of(rule.body);
      for (const auto& v : vars_of(rule.head)) {
        if (!bound.count(v))
          fail(h.id_token, "head variable '" + v +
                               "' does not occur in the body of rule '" +
                               h.id + "'");
      }
    }
    rb_.strict.push_back(std::move(rule));
  }

  void default_rule() {
    Header h = rule_header();
    std::map<std::string, VarSort> vars;
    LiteralContext ctx;
    ctx.in_rule = true;
    ctx.registry = &rb_;
    ctx.vars = &vars;

    DefaultRule rule;
    rule.id = h.id;
    rule.layer = h.layer;
    rule.allow_same = h.allow_same;
    rule.origin = RuleOrigin::User;
    if (!at(Tok::Colon)) rule.prerequisite = literals(ctx);
    expect(Tok::Colon, "':'");
    rule.consequent = literals(ctx);
    if (accept(Tok::LBracket)) {
      rule.constraint = literals(ctx);
      expect(Tok::RBracket, "']'");
    }
    expect_dot();

    auto prereq_vars = vars_of(rule.prerequisite);
    if (!rule.prerequisite.empty()) {
      for (const auto& v : vars_of(rule.consequent)) {
        if (!prereq_vars.count(v))
          fail(h.id_token, "consequent variable '" + v +
                               "' does not occur in the prerequisite of "
                               "default '" + h.id + "'");
      }
    }
    auto bound = prereq_vars;
    for (const auto& v : vars_of(rule.consequent)) bound.insert(v);
    for (const auto& v : vars_of(rule.constraint)) {
      if (!bound.count(v))
        fail(h.id_token, "constraint variable '" + v +
                             "' is unbound in default '" + h.id + "'");
    }
    rb_.defaults.push_back(std::move(rule));
  }

  // Declared persistence expands into defaults: static predicates keep
  // holding forward in time, backward persistent ones are assumed to
  // have held one state earlier.
  void materialize_persistence() {
    for (const auto& [name, sym] : rb_.predicates) {
      if (sym.is_static && seen_ids_.count("persist_" + name))
        report(Diagnostic{filename_, 0, 0,
                          "rule id 'persist_" + name +
                              "' is reserved for the generated persistence default"});
      if (sym.backward_persistent && seen_ids_.count("backpersist_" + name))
        report(Diagnostic{filename_, 0, 0,
                          "rule id 'backpersist_" + name +
                              "' is reserved for the generated persistence default"});
      Term prop = Term::constant(name);
      Term subject = Term::variable("X");
      Term folded =
          sym.surface_arity == 2 ? Term::combined(prop, Term::variable("Y")) : prop;

      auto holds_at = [&](int offset) {
        Atom a;
        a.modality = Modality::Holds;
        a.property = folded;
        a.subject = subject;
        a.time = TimeExpr::variable("T", offset);
        return pos(a);
      };

      if (sym.backward_persistent) {
        DefaultRule d;
        d.id = "backpersist_" + name;
        d.layer = sym.layer;
        d.origin = RuleOrigin::BackwardPersistence;
        d.prerequisite = {holds_at(0)};
        d.consequent = {holds_at(-1)};
        rb_.defaults.push_back(std::move(d));
      }
      if (sym.is_static) {
        Atom decl;
        decl.modality = Modality::Static;
        decl.property = prop;
        DefaultRule d;
        d.id = "persist_" + name;
        d.layer = sym.layer;
        d.origin = RuleOrigin::ForwardPersistence;
        d.prerequisite = {pos(decl), holds_at(0)};
        d.consequent = {holds_at(1)};
        rb_.defaults.push_back(std::move(d));
      }
    }
  }

  RuleBase rb_;
  std::set<std::string> seen_ids_;
};

class ScenarioParser : Parser {
 public:
  ScenarioParser(std::vector<Token> tokens, std::string filename,
                 std::vector<Diagnostic>& diagnostics)
      : Parser(std::move(tokens), std::move(filename), diagnostics) {}

  Scenario run() {
    try {
      expect_keyword("scenario");
      Token label = expect_ident("a scenario name");
      if (uppercase_start(label.text))
        fail(label, "scenario names start lowercase");
      s_.label = label.text;
      expect_dot();

      expect_keyword("agents");
      agent_list();

      expect_keyword("states");
      Token lo = expect(Tok::Int, "a state index");
      if (lo.value != 0) fail(lo, "state ranges start at 0");
      expect(Tok::DotDot, "'..'");
      Token hi = expect(Tok::Int, "a state index");
      if (hi.value < 1) fail(hi, "the last state must be at least 1");
      s_.t_max = hi.value;
      expect_dot();
    } catch (const ParseError& e) {
      report(e.diag);
      synchronize();
      // Header errors leave nothing sensible to anchor facts to.
      return std::move(s_);
    }

    while (!at(Tok::End)) {
      try {
        fact();
      } catch (const ParseError& e) {
        report(e.diag);
        synchronize();
      }
    }
    return std::move(s_);
  }

 private:
  void agent_list() {
    do {
      Token name = expect_ident("an agent name");
      if (!uppercase_start(name.text))
        fail(name, "agent names start uppercase");
      for (const auto& a : s_.agents)
        if (a == name.text) fail(name, "duplicate agent '" + name.text + "'");
      s_.agents.push_back(name.text);
    } while (accept(Tok::Comma));
    expect_dot();
  }

  void fact() {
    expect_keyword("fact");
    LiteralContext ctx;
    ctx.in_rule = false;
    ctx.agents = &s_.agents;
    ctx.t_max = s_.t_max;
    Literal lit = parse_literal(ctx);
    expect_dot();
    s_.facts.push_back(std::move(lit));
  }

  Scenario s_;
};

}  // namespace

Parsed<RuleBase> parse_rulebase(std::string_view text,
                                const std::string& filename) {
  Parsed<RuleBase> out;
  Lexer lexer(text, filename);
  auto tokens = lexer.run(out.diagnostics);
  RuleBaseParser parser(std::move(tokens), filename, out.diagnostics);
  RuleBase rb = parser.run();
  if (out.diagnostics.empty()) out.value = std::move(rb);
  return out;
}

Parsed<Scenario> parse_scenario(std::string_view text,
                                const std::string& filename) {
  Parsed<Scenario> out;
  Lexer lexer(text, filename);
  auto tokens = lexer.run(out.diagnostics);
  ScenarioParser parser(std::move(tokens), filename, out.diagnostics);
  Scenario s = parser.run();
  if (out.diagnostics.empty()) out.value = std::move(s);
  return out;
}

namespace {

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

Parsed<RuleBase> parse_rulebase_file(const std::string& path) {
  auto text = slurp(path);
  if (!text) {
    Parsed<RuleBase> out;
    out.diagnostics.push_back(
        Diagnostic{path, 0, 0, "cannot open file"});
    return out;
  }
  return parse_rulebase(*text, path);
}

Parsed<Scenario> parse_scenario_file(const std::string& path) {
  auto text = slurp(path);
  if (!text) {
    Parsed<Scenario> out;
    out.diagnostics.push_back(
        Diagnostic{path, 0, 0, "cannot open file"});
    return out;
  }
  return parse_scenario(*text, path);
}

}  // namespace norma
