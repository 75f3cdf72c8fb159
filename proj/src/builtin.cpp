#include "norma/builtin.hpp"

#include <sstream>
#include <stdexcept>

#include "norma/parser.hpp"

namespace norma {

namespace {

// Kept byte for byte identical to kb/crash_norms.nrk; a test guards
// the equality.
const char* const kRuleBaseText =
    R"KB(# Crash norms rule base. Layer 1 is the kernel of driving properties
# and duties; layer 2 describes the scene. Binary predicates take two
# vehicles, unary ones a single vehicle, plus the state index.

predicate stops/1 layer 1.
predicate starts/1 layer 1.
predicate runs_slowly/1 layer 1.
predicate runs_backwards/1 layer 1.
predicate control/1 layer 1.
predicate changes_speed/2 layer 1.
predicate disruptive_factor/2 layer 1 unforeseeable.

predicate parked/1 layer 2 static.
predicate bend/1 layer 2.
predicate mistaken_command/1 layer 2.
predicate slippery_road/1 layer 2.
predicate crash/2 layer 2.
predicate visible/2 layer 2.
predicate obstacle/2 layer 2.
predicate same_file/2 layer 2 static.
predicate is_follower/2 layer 2 backward_persist.

# Getting bumped means the bumper did not stop.
rule r1 layer 2: -holds(stops, Bumper, T) <- holds(crash, Bumped, Bumper, T).

# Keeping control of one's vehicle is a duty under all circumstances.
rule r2 layer 1: must(control, Ag, T).

# Duties are expected to be complied with.
rule r3 layer 1: normally(P, Ag, T) <- must(P, Ag, T).

# Control brings the ability to stop.
rule r4 layer 1: able(stops, Ag, T) <- holds(control, Ag, T).

# Control brings the ability to slow down.
rule r5 layer 2: able(runs_slowly, Ag, T) <- holds(control, Ag, T).

# Following a slow vehicle obliges slowing down.
rule r6 layer 2: must(runs_slowly, Follower, T) <- holds(is_follower, Follower, Leader, T) & holds(runs_slowly, Leader, T).

# A duty paired with the ability, yet the property fails at the next
# state: a basic anomaly in the transition.
rule rf layer 1: b_an(P, Ag, T) <- must(P, Ag, T) & able(P, Ag, T) & -holds(P, Ag, T+1).

# The other face of anomaly: an abnormal perturbation.
rule rf_prime layer 1: b_an(P, Ag, T) <- perturb(P, Ag, T).

# Bridge: an observed disruptive factor is an abnormal perturbation.
rule rb1 layer 1: perturb(F, Ag, T) <- holds(disruptive_factor, Ag, F, T).

# What normally happens does happen, barring contrary evidence.
default d1 layer 1: normally(P, Ag, T) : holds(P, Ag, T+1).

# The follower of a stopping vehicle must stop too, unless it is not
# under control.
default d2 layer 2: holds(is_follower, Follower, Leader, T) & holds(stops, Leader, T) : must(stops, Follower, T) [holds(control, Follower, T)].

# Losing control right after a bend suggests a duty to slow down that
# went unfulfilled.
default d5 layer 2: holds(bend, Ag, T) & -holds(control, Ag, T+1) : must(runs_slowly, Ag, T) & -holds(runs_slowly, Ag, T+1).

# Vehicles of one file that crash were in a following situation just
# before.
default d6 layer 2: holds(same_file, Front, Back, T) & holds(crash, Front, Back, T) : holds(is_follower, Back, Front, T-1).
)KB";

struct NamedScenario {
  const char* name;
  const char* text;
};

const NamedScenario kScenarioTexts[] = {
    {"b21",
     R"SCN(# A vehicle stops to let firemen through; the car behind bumps into it.
scenario b21.
agents A, B.
states 0..2.
fact holds(stops, A, 1).
fact holds(crash, A, B, 2).
fact holds(is_follower, B, A, 2).
)SCN"},
    {"b21_no_control",
     R"SCN(# The b21 crash, except the follower had already lost control, which
# voids its duty to stop.
scenario b21_no_control.
agents A, B.
states 0..2.
fact holds(stops, A, 1).
fact holds(crash, A, B, 2).
fact holds(is_follower, B, A, 2).
fact -holds(control, B, 1).
)SCN"},
    {"bend",
     R"SCN(# A vehicle takes a bend and leaves the road right after.
scenario bend.
agents C.
states 0..2.
fact holds(bend, C, 1).
fact -holds(control, C, 2).
)SCN"},
    {"perturb",
     R"SCN(# A patch of ice throws the vehicle off; nobody could have foreseen it.
scenario perturb.
agents D.
states 0..2.
fact holds(disruptive_factor, D, slippery, 1).
)SCN"},
    {"calm",
     R"SCN(# Two vehicles, three states, nothing reported. No anomaly to find.
scenario calm.
agents A, B.
states 0..2.
)SCN"},
};

// Kept byte for byte identical to kb/catalogue.tsv.
const char* const kCatalogueText =
    R"TSV(id	location	quote	gloss
r1	§6	whenever Ag' bumps into Ag at time t , Ag' did not stop at time t	getting bumped means the bumper did not stop
r2	§2 (N1), §6	under all circumstances, one must have control over one's vehicle	control is a duty in every state
r3	§6	Agents are expected to comply with their duties	duties induce normality
r4	§6	for a vehicle, being under control implies being able to stop	control brings the ability to stop
r5	Appendix 2	we must check that Ag was able to slow down, and this is the reason for the rule	control brings the ability to slow down
r6	Appendix 2	it connects layer 2 (Is_follower) with the kernel (Runs_slowly)	following a slow vehicle obliges slowing down
rf	§4 (F)	MUST-DO(p, Ag, t) AND ABLE-TO-DO(p, Ag, t) AND NOT HOLDS(p, Ag, t+1) -> B-An (Basic-Anomaly)	unfulfilled norm: duty plus ability, property fails next state
rf_prime	§4 (F')	ABNORMAL-PERTURBATION(p, Ag, t) -> B-An	perturbation anomaly
rb1	bridge (§4 H3)	an external factor that could not reasonably be foreseen explains the accident	observed disruptive factors count as abnormal perturbations
d1	§5, §6	the transitions (t, t+1) in the actual unfolding of states are normal ones	normal transitions happen by default
d2	§6	if Ag' follows Ag , and Ag stops, then Ag' must stop too, unless Ag' is not under control	follower of a stopping leader must stop, unless out of control
d5	Appendix 2	This default reflects an abduction: if Ag was in a bend at state t, and lost control at state t+1, it is likely that Ag had to slow down and did not do so	bend then lost control suggests an unfulfilled duty to slow down
d6	Appendix 2	if Ag' bumps into Ag and both are in the same file, it is most likely that Ag' was the follower of Ag in that file	same file plus crash implies prior following
persist_parked	§6	Some predicates are declared static, and are endowed with forward default persistence	parked keeps holding forward in time
persist_same_file	§6	Some predicates are declared static, and are endowed with forward default persistence	same file keeps holding forward in time
backpersist_is_follower	§6	we need also a kind of abductive reasoning entailing backward persistence	following is assumed to have held one state earlier
)TSV";

[[noreturn]] void embedded_failure(const std::string& what,
                                   const std::vector<Diagnostic>& diags) {
  std::string msg = "embedded " + what + " does not parse";
  for (const auto& d : diags) msg += "\n  " + d.str();
  throw std::logic_error(msg);
}

}  // namespace

const std::string& builtin_rulebase_text() {
  static const std::string text = kRuleBaseText;
  return text;
}

const RuleBase& builtin_rulebase() {
  static const RuleBase rb = [] {
    auto parsed = parse_rulebase(kRuleBaseText, "<builtin>");
    if (!parsed.ok()) embedded_failure("rule base", parsed.diagnostics);
    return *parsed.value;
  }();
  return rb;
}

const std::map<std::string, Scenario>& builtin_scenarios() {
  static const std::map<std::string, Scenario> all = [] {
    std::map<std::string, Scenario> out;
    for (const auto& entry : kScenarioTexts) {
      auto parsed = parse_scenario(entry.text, "<builtin>");
      if (!parsed.ok())
        embedded_failure(std::string("scenario ") + entry.name,
                         parsed.diagnostics);
      out.emplace(entry.name, std::move(*parsed.value));
    }
    return out;
  }();
  return all;
}

const Scenario* find_builtin_scenario(const std::string& name) {
  const auto& all = builtin_scenarios();
  auto it = all.find(name);
  return it == all.end() ? nullptr : &it->second;
}

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> out;
  for (const auto& [name, s] : builtin_scenarios()) out.push_back(name);
  return out;
}

const std::string* builtin_scenario_text(const std::string& name) {
  static const std::map<std::string, std::string> texts = [] {
    std::map<std::string, std::string> out;
    for (const auto& entry : kScenarioTexts) out.emplace(entry.name, entry.text);
    return out;
  }();
  auto it = texts.find(name);
  return it == texts.end() ? nullptr : &it->second;
}

const std::vector<CatalogueEntry>& catalogue() {
  static const std::vector<CatalogueEntry> entries = [] {
    std::vector<CatalogueEntry> out;
    std::istringstream in(kCatalogueText);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (header) {
        header = false;
        continue;
      }
      if (line.empty()) continue;
      CatalogueEntry entry;
      std::string* fields[] = {&entry.id, &entry.location, &entry.quote,
                               &entry.gloss};
      size_t start = 0;
      for (int i = 0; i < 4; ++i) {
        size_t tab = line.find('\t', start);
        size_t end = (i == 3 || tab == std::string::npos) ? line.size() : tab;
        *fields[i] = line.substr(start, end - start);
        start = end + 1;
      }
      out.push_back(std::move(entry));
    }
    return out;
  }();
  return entries;
}

const CatalogueEntry* catalogue_lookup(const std::string& id) {
  for (const auto& entry : catalogue()) {
    if (entry.id == id) return &entry;
  }
  return nullptr;
}

const std::string& catalogue_text() {
  static const std::string text = kCatalogueText;
  return text;
}

}  // namespace norma
