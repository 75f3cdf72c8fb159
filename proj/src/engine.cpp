#include "norma/engine.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace norma {

ConflictError::ConflictError(Literal a_, Literal b_)
    : EngineError("inconsistent: " + a_.str() + " conflicts with " + b_.str()),
      a(std::move(a_)),
      b(std::move(b_)) {}

const char* status_name(Status s) {
  switch (s) {
    case Status::NoAnomaly: return "no_anomaly";
    case Status::AnomalyFound: return "anomaly_found";
    case Status::InconsistentFacts: return "inconsistent_facts";
    case Status::ExtensionLimitHit: return "extension_limit_hit";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------- grounding

enum class VarClass { Agent, Property, Time };

struct VarInfo {
  std::string name;
  VarClass cls = VarClass::Agent;
};

void classify_term(const Term& t, bool property_slot,
                   std::map<std::string, VarClass>& classes,
                   std::vector<std::string>& order) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = classes.find(t.name());
      VarClass wanted = property_slot ? VarClass::Property : VarClass::Agent;
      if (it == classes.end()) {
        classes.emplace(t.name(), wanted);
        order.push_back(t.name());
      } else if (wanted == VarClass::Property) {
        // A single property occurrence widens the domain.
        it->second = VarClass::Property;
      }
      break;
    }
    case Term::Kind::Negated:
      classify_term(t.inner(), property_slot, classes, order);
      break;
    case Term::Kind::Combined:
      classify_term(t.pred(), true, classes, order);
      classify_term(t.arg(), false, classes, order);
      break;
    case Term::Kind::Constant:
      break;
  }
}

void classify_literals(const std::vector<Literal>& lits,
                       std::map<std::string, VarClass>& classes,
                       std::vector<std::string>& order) {
  for (const auto& lit : lits) {
    classify_term(lit.atom.property, true, classes, order);
    if (lit.atom.subject) classify_term(*lit.atom.subject, false, classes, order);
    if (lit.atom.time && !lit.atom.time->is_literal()) {
      const std::string& name = *lit.atom.time->var;
      if (!classes.count(name)) {
        classes.emplace(name, VarClass::Time);
        order.push_back(name);
      }
    }
  }
}

struct Universe {
  std::vector<Term> agents;
  std::vector<Term> properties;
  std::vector<int> times;
};

Universe build_universe(const RuleBase& rb, const Scenario& s) {
  Universe u;
  for (const auto& a : s.agents) u.agents.push_back(Term::constant(a));
  for (int t = 0; t <= s.t_max; ++t) u.times.push_back(t);

  std::set<Term> props;
  for (const auto& [name, sym] : rb.predicates) {
    Term base = Term::constant(name);
    if (sym.surface_arity == 1) {
      props.insert(base);
    } else {
      for (const auto& agent : u.agents)
        props.insert(Term::combined(base, agent));
    }
  }
  // Constants observed in fact subject or property slots that are
  // neither agents nor declared predicates, e.g. perturbation factor
  // names, join the property universe.
  auto foreign = [&](const Term& t) {
    if (!t.is_constant()) return false;
    if (rb.find_predicate(t.name())) return false;
    for (const auto& a : s.agents)
      if (a == t.name()) return false;
    return true;
  };
  for (const auto& fact : s.facts) {
    Term prop = fact.atom.property;
    if (prop.is_negated()) prop = prop.inner();
    if (foreign(prop)) props.insert(prop);
    if (prop.is_combined() && foreign(prop.arg())) props.insert(prop.arg());
    if (fact.atom.subject && foreign(*fact.atom.subject))
      props.insert(*fact.atom.subject);
  }
  u.properties.assign(props.begin(), props.end());
  return u;
}

bool times_in_range(const std::vector<Literal>& lits, int t_max) {
  for (const auto& lit : lits) {
    if (!lit.atom.time) continue;
    if (!lit.atom.time->is_literal()) return false;  // unbound: caller bug
    int t = lit.atom.time->state;
    if (t < 0 || t > t_max) return false;
  }
  return true;
}

class Grounder {
 public:
  Grounder(const RuleBase& rb, const Scenario& s, const EngineOptions& options)
      : rb_(rb), s_(s), options_(options), universe_(build_universe(rb, s)) {}

  GroundProgram run() {
    GroundProgram gp;
    for (const auto& rule : rb_.strict) {
      std::vector<std::vector<Literal>> groups = {rule.head, rule.body};
      enumerate(rule.id, rule.allow_same, groups, [&](const Binding& b,
                                                      std::string label) {
        GroundRule g;
        g.label = std::move(label);
        g.origin = rule.id;
        g.layer = rule.layer;
        for (const auto& lit : rule.body) g.body.push_back(substitute(lit, b));
        for (const auto& lit : rule.head) g.head.push_back(substitute(lit, b));
        if (!times_in_range(g.head, s_.t_max) ||
            !times_in_range(g.body, s_.t_max))
          return;
        bump();
        gp.rules.push_back(std::move(g));
      });
    }
    for (const auto& rule : rb_.defaults) {
      std::vector<std::vector<Literal>> groups = {rule.prerequisite,
                                                  rule.consequent,
                                                  rule.constraint};
      enumerate(rule.id, rule.allow_same, groups, [&](const Binding& b,
                                                      std::string label) {
        GroundDefault g;
        g.label = std::move(label);
        g.origin = rule.id;
        g.layer = rule.layer;
        g.kind = rule.origin;
        for (const auto& lit : rule.prerequisite)
          g.prerequisites.push_back(substitute(lit, b));
        for (const auto& lit : rule.consequent)
          g.consequents.push_back(substitute(lit, b));
        g.justifications = g.consequents;
        for (const auto& lit : rule.constraint)
          g.justifications.push_back(substitute(lit, b));
        if (!times_in_range(g.prerequisites, s_.t_max) ||
            !times_in_range(g.justifications, s_.t_max))
          return;
        bump();
        gp.defaults.push_back(std::move(g));
      });
    }
    return gp;
  }

 private:
  void bump() {
    if (++count_ > options_.ground_cap) {
      std::ostringstream msg;
      msg << "grounding exceeds the cap of " << options_.ground_cap
          << " instances";
      throw CapError(msg.str());
    }
  }

  void enumerate(const std::string& id, bool allow_same,
                 const std::vector<std::vector<Literal>>& groups,
                 const std::function<void(const Binding&, std::string)>& emit) {
    std::map<std::string, VarClass> classes;
    std::vector<std::string> order;
    for (const auto& group : groups) classify_literals(group, classes, order);

    Binding binding;
    std::vector<Term> used;  // values taken by object variables so far
    std::function<void(size_t)> walk = [&](size_t i) {
      if (i == order.size()) {
        std::ostringstream label;
        label << id;
        if (!order.empty()) {
          label << '[';
          for (size_t k = 0; k < order.size(); ++k) {
            if (k) label << ',';
            const auto& name = order[k];
            label << name << '=';
            if (classes[name] == VarClass::Time)
              label << binding.times[name];
            else
              label << binding.terms.at(name).str();
          }
          label << ']';
        }
        emit(binding, label.str());
        return;
      }
      const std::string& name = order[i];
      switch (classes[name]) {
        case VarClass::Time:
          for (int t : universe_.times) {
            binding.times[name] = t;
            walk(i + 1);
          }
          binding.times.erase(name);
          break;
        case VarClass::Agent:
        case VarClass::Property: {
          const auto& domain = classes[name] == VarClass::Agent
                                   ? universe_.agents
                                   : universe_.properties;
          for (const auto& value : domain) {
            if (!allow_same &&
                std::find(used.begin(), used.end(), value) != used.end())
              continue;
            binding.terms.emplace(name, value).first->second = value;
            used.push_back(value);
            walk(i + 1);
            used.pop_back();
          }
          binding.terms.erase(name);
          break;
        }
      }
    };
    walk(0);
  }

  const RuleBase& rb_;
  const Scenario& s_;
  const EngineOptions& options_;
  Universe universe_;
  int count_ = 0;
};

// ------------------------------------------------------------------ closure

Literal complement_of(const Literal& lit) {
  Literal out = lit;
  out.sign = lit.positive() ? Literal::Sign::Neg : Literal::Sign::Pos;
  return out;
}

bool contains_all(const LiteralSet& s, const std::vector<Literal>& lits) {
  for (const auto& lit : lits)
    if (!s.count(lit)) return false;
  return true;
}

void note(Trace* trace, const Literal& lit, TraceEntry entry) {
  if (!trace) return;
  trace->emplace(lit, std::move(entry));  // first writer wins
}

// Closure variant that tolerates complementary pairs; used for the
// reachability estimate.
void close_blind(LiteralSet& s, const std::vector<GroundRule>& rules) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : rules) {
      if (!contains_all(s, rule.body)) continue;
      for (const auto& h : rule.head) {
        if (s.insert(h).second) changed = true;
      }
    }
  }
}

}  // namespace

LiteralSet strict_closure(const LiteralSet& facts,
                          const std::vector<GroundRule>& rules, Trace* trace) {
  LiteralSet s = facts;
  std::pair<Literal, Literal> clash;
  if (inconsistent(s, &clash)) throw ConflictError(clash.first, clash.second);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : rules) {
      if (!contains_all(s, rule.body)) continue;
      for (const auto& h : rule.head) {
        if (s.count(h)) continue;
        if (s.count(complement_of(h)))
          throw ConflictError(h, complement_of(h));
        s.insert(h);
        note(trace, h,
             TraceEntry{TraceEntry::Source::Rule, rule.origin, rule.body});
        changed = true;
      }
    }
  }
  return s;
}

bool applicable(const GroundDefault& d, const LiteralSet& current) {
  if (!contains_all(current, d.prerequisites)) return false;
  for (const auto& j : d.justifications)
    if (current.count(complement_of(j))) return false;
  return true;
}

namespace {

bool default_order(const GroundDefault& a, const GroundDefault& b) {
  if (a.layer != b.layer) return a.layer > b.layer;
  if (a.origin != b.origin) return a.origin < b.origin;
  return a.label < b.label;
}

std::vector<const GroundDefault*> sorted_defaults(
    const std::vector<GroundDefault>& defaults) {
  std::vector<const GroundDefault*> out;
  out.reserve(defaults.size());
  for (const auto& d : defaults) out.push_back(&d);
  std::sort(out.begin(), out.end(),
            [](const GroundDefault* x, const GroundDefault* y) {
              return default_order(*x, *y);
            });
  return out;
}

void seed_trace(Trace& trace, const LiteralSet& facts, const Trace* seed) {
  if (seed) trace = *seed;
  for (const auto& f : facts)
    trace.emplace(f, TraceEntry{TraceEntry::Source::Given, "", {}});
}

// Monotone reconstruction of a fixed candidate. Yields the extension
// (with applied list and trace) when the candidate satisfies the
// fixpoint property, nothing otherwise.
std::optional<Extension> reconstruct(const LiteralSet& candidate,
                                     const LiteralSet& facts,
                                     const std::vector<GroundRule>& rules,
                                     const std::vector<GroundDefault>& defaults,
                                     const Trace* seed) {
  std::pair<Literal, Literal> clash;
  if (inconsistent(candidate, &clash)) return std::nullopt;

  Extension ext;
  seed_trace(ext.trace, facts, seed);
  LiteralSet s;
  try {
    s = strict_closure(facts, rules, &ext.trace);
  } catch (const ConflictError&) {
    return std::nullopt;
  }

  auto order = sorted_defaults(defaults);
  std::vector<bool> done(order.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < order.size(); ++i) {
      if (done[i]) continue;
      const GroundDefault& d = *order[i];
      if (!contains_all(s, d.prerequisites)) continue;
      bool blocked = false;
      for (const auto& j : d.justifications) {
        if (candidate.count(complement_of(j))) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      done[i] = true;
      if (contains_all(s, d.consequents)) continue;  // adds nothing
      LiteralSet grown = s;
      for (const auto& c : d.consequents) {
        grown.insert(c);
        note(&ext.trace, c,
             TraceEntry{TraceEntry::Source::Default, d.origin,
                        d.prerequisites});
      }
      try {
        s = strict_closure(grown, rules, &ext.trace);
      } catch (const ConflictError&) {
        return std::nullopt;
      }
      ext.applied.push_back(d.label);
      changed = true;
    }
  }
  if (s != candidate) return std::nullopt;
  ext.literals = std::move(s);
  return ext;
}

std::vector<Extension> enumerate_seeded(const LiteralSet& facts,
                                        const std::vector<GroundRule>& rules,
                                        const std::vector<GroundDefault>& defaults,
                                        const EngineOptions& options,
                                        bool* truncated, const Trace* seed) {
  std::pair<Literal, Literal> clash;
  if (inconsistent(facts, &clash))
    throw ConflictError(clash.first, clash.second);
  if (truncated) *truncated = false;

  // Reachability estimate: close the facts under rules and all default
  // consequents, blind to justifications and conflicts. Defaults whose
  // prerequisites stay out of reach can never fire.
  LiteralSet optimistic = facts;
  bool changed = true;
  while (changed) {
    changed = false;
    close_blind(optimistic, rules);
    for (const auto& d : defaults) {
      if (!contains_all(optimistic, d.prerequisites)) continue;
      for (const auto& c : d.consequents) {
        if (optimistic.insert(c).second) changed = true;
      }
    }
  }
  std::vector<const GroundDefault*> reachable;
  for (const auto& d : defaults) {
    if (contains_all(optimistic, d.prerequisites)) reachable.push_back(&d);
  }
  if (reachable.size() > static_cast<size_t>(options.subset_cap)) {
    std::ostringstream msg;
    msg << reachable.size() << " defaults are reachable, above the exhaustive "
        << "search cap of " << options.subset_cap
        << "; use the deterministic mode";
    throw CapError(msg.str());
  }
  std::sort(reachable.begin(), reachable.end(),
            [](const GroundDefault* x, const GroundDefault* y) {
              return default_order(*x, *y);
            });

  // Generate one candidate per subset: apply the chosen defaults
  // whenever their prerequisites arrive, ignoring justifications; the
  // fixpoint check below sorts out the pretenders.
  std::set<LiteralSet> candidates;
  size_t n = reachable.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    LiteralSet s;
    try {
      s = strict_closure(facts, rules, nullptr);
      std::vector<bool> fired(n, false);
      bool grew = true;
      while (grew) {
        grew = false;
        for (size_t i = 0; i < n; ++i) {
          if (!(mask & (size_t{1} << i)) || fired[i]) continue;
          if (!contains_all(s, reachable[i]->prerequisites)) continue;
          fired[i] = true;
          LiteralSet grown = s;
          for (const auto& c : reachable[i]->consequents) grown.insert(c);
          s = strict_closure(grown, rules, nullptr);
          grew = true;
        }
      }
    } catch (const ConflictError&) {
      continue;
    }
    candidates.insert(std::move(s));
  }

  std::vector<Extension> out;
  for (const auto& candidate : candidates) {
    auto ext = reconstruct(candidate, facts, rules, defaults, seed);
    if (!ext) continue;
    out.push_back(std::move(*ext));
    if (out.size() > static_cast<size_t>(options.max_extensions)) break;
  }
  if (out.size() > static_cast<size_t>(options.max_extensions)) {
    out.resize(options.max_extensions);
    if (truncated) *truncated = true;
  }
  return out;
}

std::optional<Extension> compute_seeded(const LiteralSet& facts,
                                        const std::vector<GroundRule>& rules,
                                        const std::vector<GroundDefault>& defaults,
                                        const EngineOptions& options,
                                        const Trace* seed) {
  std::pair<Literal, Literal> clash;
  if (inconsistent(facts, &clash))
    throw ConflictError(clash.first, clash.second);

  Extension ext;
  seed_trace(ext.trace, facts, seed);
  bool failed = false;
  LiteralSet s;
  try {
    s = strict_closure(facts, rules, &ext.trace);
  } catch (const ConflictError&) {
    throw;  // facts alone conflict under the strict rules
  }

  auto order = sorted_defaults(defaults);
  std::vector<bool> done(order.size(), false);
  while (!failed) {
    size_t pick = order.size();
    for (size_t i = 0; i < order.size(); ++i) {
      if (done[i]) continue;
      const GroundDefault& d = *order[i];
      if (!applicable(d, s)) continue;
      if (contains_all(s, d.consequents)) {
        done[i] = true;  // nothing to add
        continue;
      }
      pick = i;
      break;
    }
    if (pick == order.size()) break;
    const GroundDefault& d = *order[pick];
    done[pick] = true;
    LiteralSet grown = s;
    for (const auto& c : d.consequents) {
      grown.insert(c);
      note(&ext.trace, c,
           TraceEntry{TraceEntry::Source::Default, d.origin, d.prerequisites});
    }
    try {
      s = strict_closure(grown, rules, &ext.trace);
    } catch (const ConflictError&) {
      failed = true;  // a semi-normal interaction; fall back
      break;
    }
    ext.applied.push_back(d.label);
  }

  if (!failed) {
    auto check = reconstruct(s, facts, rules, defaults, seed);
    if (check) {
      ext.literals = std::move(s);
      return ext;
    }
  }

  // The greedy pass went wrong, which can happen with semi-normal
  // defaults. Fall back to the exhaustive search.
  auto all = enumerate_seeded(facts, rules, defaults, options, nullptr, seed);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

}  // namespace

std::optional<Extension> compute_extension(
    const LiteralSet& facts, const std::vector<GroundRule>& rules,
    const std::vector<GroundDefault>& defaults, const EngineOptions& options) {
  return compute_seeded(facts, rules, defaults, options, nullptr);
}

std::vector<Extension> enumerate_extensions(
    const LiteralSet& facts, const std::vector<GroundRule>& rules,
    const std::vector<GroundDefault>& defaults, const EngineOptions& options,
    bool* truncated) {
  return enumerate_seeded(facts, rules, defaults, options, truncated, nullptr);
}

bool is_extension(const LiteralSet& candidate, const LiteralSet& facts,
                  const std::vector<GroundRule>& rules,
                  const std::vector<GroundDefault>& defaults) {
  return reconstruct(candidate, facts, rules, defaults, nullptr).has_value();
}

GroundProgram ground_rules(const RuleBase& rb, const Scenario& s,
                           const EngineOptions& options) {
  Grounder grounder(rb, s, options);
  return grounder.run();
}

std::vector<GroundDefault> generate_persistence(const RuleBase& rb,
                                                const Scenario& s,
                                                const EngineOptions& options) {
  GroundProgram gp = ground_rules(rb, s, options);
  std::vector<GroundDefault> out;
  for (auto& d : gp.defaults) {
    if (d.kind != RuleOrigin::User) out.push_back(std::move(d));
  }
  return out;
}

namespace {

std::vector<Literal> anomalies_in(const LiteralSet& s) {
  std::vector<Literal> out;
  for (const auto& lit : s) {
    if (lit.positive() && lit.atom.modality == Modality::BasicAnomaly)
      out.push_back(lit);
  }
  return out;
}

std::vector<Literal> new_literals(const LiteralSet& now,
                                  const LiteralSet& before) {
  std::vector<Literal> out;
  std::set_difference(now.begin(), now.end(), before.begin(), before.end(),
                      std::back_inserter(out));
  return out;
}

int literal_layer(const RuleBase& rb, const Literal& lit) {
  return rb.property_layer(lit.atom.property);
}

}  // namespace

RunResult run_strata(const RuleBase& rb, const Scenario& s,
                     const RunOptions& options) {
  RunResult out;

  LiteralSet base;
  Trace seed;
  for (const auto& fact : s.facts) {
    Literal lit = canonicalize(fact);
    base.insert(lit);
    seed.emplace(lit, TraceEntry{TraceEntry::Source::Given, "", {}});
  }
  for (const auto& [name, sym] : rb.predicates) {
    if (!sym.is_static) continue;
    Atom decl;
    decl.modality = Modality::Static;
    decl.property = Term::constant(name);
    Literal lit = pos(decl);
    base.insert(lit);
    seed.emplace(lit, TraceEntry{TraceEntry::Source::StaticDecl, "", {}});
  }

  try {
    GroundProgram gp = ground_rules(rb, s, options.engine);

    auto finish = [&](std::vector<Extension> extensions, bool truncated) {
      out.extensions = std::move(extensions);
      out.truncated = truncated;
      bool anomaly = false;
      for (const auto& ext : out.extensions) {
        out.anomalies.push_back(anomalies_in(ext.literals));
        if (!out.anomalies.back().empty()) anomaly = true;
      }
      if (anomaly)
        out.status = Status::AnomalyFound;
      else if (truncated)
        out.status = Status::ExtensionLimitHit;
      else
        out.status = Status::NoAnomaly;
    };

    if (options.all_extensions) {
      bool truncated = false;
      auto exts = enumerate_seeded(base, gp.rules, gp.defaults, options.engine,
                                   &truncated, &seed);
      StratumLogEntry entry;
      entry.stratum = 0;
      if (!exts.empty())
        entry.added = new_literals(exts.front().literals, base);
      for (const auto& e : exts)
        entry.anomaly = entry.anomaly || !anomalies_in(e.literals).empty();
      out.stratum_log.push_back(std::move(entry));
      finish(std::move(exts), truncated);
      return out;
    }

    if (!options.use_strata) {
      auto ext =
          compute_seeded(base, gp.rules, gp.defaults, options.engine, &seed);
      if (!ext) throw EngineError("the rule base admits no extension here");
      StratumLogEntry entry;
      entry.stratum = 0;
      entry.added = new_literals(ext->literals, base);
      entry.anomaly = !anomalies_in(ext->literals).empty();
      out.stratum_log.push_back(std::move(entry));
      finish({std::move(*ext)}, false);
      return out;
    }

    LiteralSet current = base;
    Trace trace = seed;
    std::vector<std::string> applied;
    bool anomaly = false;
    for (int stratum = 3; stratum >= 1; --stratum) {
      std::vector<GroundRule> rules;
      for (const auto& r : gp.rules) {
        if (r.layer < stratum) continue;
        bool fits = true;
        for (const auto& h : r.head)
          fits = fits && literal_layer(rb, h) >= stratum - 1;
        if (fits) rules.push_back(r);
      }
      std::vector<GroundDefault> defaults;
      for (const auto& d : gp.defaults) {
        if (d.layer < stratum) continue;
        bool fits = true;
        for (const auto& c : d.consequents)
          fits = fits && literal_layer(rb, c) >= stratum - 1;
        if (fits) defaults.push_back(d);
      }

      auto ext =
          compute_seeded(current, rules, defaults, options.engine, &trace);
      if (!ext) throw EngineError("the rule base admits no extension here");

      StratumLogEntry entry;
      entry.stratum = stratum;
      entry.added = new_literals(ext->literals, current);
      entry.anomaly = !anomalies_in(ext->literals).empty();
      anomaly = entry.anomaly;
      out.stratum_log.push_back(std::move(entry));

      current = ext->literals;
      trace = ext->trace;
      applied.insert(applied.end(), ext->applied.begin(), ext->applied.end());
      if (anomaly) break;  // the violation stands; lower strata can wait
    }
    Extension final_ext;
    final_ext.literals = std::move(current);
    final_ext.applied = std::move(applied);
    final_ext.trace = std::move(trace);
    finish({std::move(final_ext)}, false);
    return out;
  } catch (const ConflictError& e) {
    out.status = Status::InconsistentFacts;
    out.conflict = std::make_pair(e.a, e.b);
    out.extensions.clear();
    out.anomalies.clear();
    return out;
  }
}

}  // namespace norma
