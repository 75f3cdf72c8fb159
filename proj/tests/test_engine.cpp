#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "norma/builtin.hpp"
#include "norma/engine.hpp"
#include "norma/parser.hpp"
#include "oracle.hpp"

using namespace norma;

namespace {

Literal lit(const std::string& prop, bool positive = true, int t = 0) {
  Atom atom;
  atom.modality = Modality::Holds;
  atom.property = Term::constant(prop);
  atom.subject = Term::constant("a");
  atom.time = TimeExpr::literal(t);
  return positive ? pos(atom) : neg(atom);
}

GroundRule mk_rule(const std::string& id, std::vector<Literal> body,
                   std::vector<Literal> head) {
  GroundRule r;
  r.label = id;
  r.origin = id;
  r.body = std::move(body);
  r.head = std::move(head);
  return r;
}

GroundDefault mk_default(const std::string& id, std::vector<Literal> pre,
                         std::vector<Literal> cons,
                         std::vector<Literal> constraint = {}) {
  GroundDefault d;
  d.label = id;
  d.origin = id;
  d.prerequisites = std::move(pre);
  d.consequents = std::move(cons);
  d.justifications = d.consequents;
  for (auto& c : constraint) d.justifications.push_back(std::move(c));
  return d;
}

std::map<std::string, int> count_by_origin(const GroundProgram& gp) {
  std::map<std::string, int> out;
  for (const auto& r : gp.rules) ++out[r.origin];
  for (const auto& d : gp.defaults) ++out[d.origin];
  return out;
}

RuleBase parse_rb(const std::string& text) {
  auto parsed = parse_rulebase(text, "inline");
  REQUIRE(parsed.ok());
  return std::move(*parsed.value);
}

Scenario parse_scn(const std::string& text) {
  auto parsed = parse_scenario(text, "inline");
  REQUIRE(parsed.ok());
  return std::move(*parsed.value);
}

}  // namespace

TEST_CASE("grounding the shipped rule base over the rear-end scenario") {
  const RuleBase& rb = builtin_rulebase();
  const Scenario* s = find_builtin_scenario("b21");
  REQUIRE(s != nullptr);
  GroundProgram gp = ground_rules(rb, *s);
  auto counts = count_by_origin(gp);

  CHECK(counts["r2"] == 6);   // 2 agents x 3 states
  CHECK(counts["r1"] == 6);   // 2 ordered pairs x 3 states
  CHECK(counts["d2"] == 6);
  CHECK(counts["d1"] == 92);  // 23 properties x 2 agents x T in {0,1}

  SUBCASE("instances with out-of-range times are dropped") {
    for (const auto& d : gp.defaults) {
      if (d.origin != "d1") continue;
      for (const auto& j : d.justifications) {
        REQUIRE(j.atom.time.has_value());
        CHECK(j.atom.time->state <= s->t_max);
      }
    }
  }

  SUBCASE("labels carry the binding") {
    bool found = false;
    for (const auto& d : gp.defaults)
      found = found || d.label == "d2[Leader=A,Follower=B,T=1]";
    CHECK(found);
  }
}

TEST_CASE("persistence instances for the rear-end scenario") {
  const RuleBase& rb = builtin_rulebase();
  const Scenario* s = find_builtin_scenario("b21");
  REQUIRE(s != nullptr);
  auto persistence = generate_persistence(rb, *s);
  CHECK(persistence.size() == 12);

  std::map<std::string, int> counts;
  for (const auto& d : persistence) ++counts[d.origin];
  CHECK(counts["persist_parked"] == 4);
  CHECK(counts["persist_same_file"] == 4);
  CHECK(counts["backpersist_is_follower"] == 4);

  bool found = false;
  for (const auto& d : persistence) {
    if (d.label != "backpersist_is_follower[Y=A,X=B,T=2]") continue;
    found = true;
    REQUIRE(d.consequents.size() == 1);
    const Atom& c = d.consequents[0].atom;
    CHECK(c.property ==
          Term::combined(Term::constant("is_follower"), Term::constant("A")));
    CHECK(c.subject == Term::constant("B"));
    CHECK(c.time == TimeExpr::literal(1));
  }
  CHECK(found);
}

TEST_CASE("distinct variables take distinct values unless allowed") {
  std::string base =
      "predicate near/2 layer 1.\n"
      "rule r layer 1: holds(near, X, Y, T) <- holds(near, Y, X, T).\n";
  Scenario s = parse_scn("scenario s.\nagents A, B, C.\nstates 0..1.\n");

  GroundProgram strict_distinct = ground_rules(parse_rb(base), s);
  CHECK(strict_distinct.rules.size() == 12);  // 3x2 ordered pairs x 2 states

  std::string relaxed =
      "predicate near/2 layer 1.\n"
      "rule r allow_same layer 1: holds(near, X, Y, T) <- holds(near, Y, X, T).\n";
  GroundProgram with_same = ground_rules(parse_rb(relaxed), s);
  CHECK(with_same.rules.size() == 18);  // 3x3 pairs x 2 states
}

TEST_CASE("grounding respects the instance cap") {
  const RuleBase& rb = builtin_rulebase();
  const Scenario* s = find_builtin_scenario("b21");
  EngineOptions tight;
  tight.ground_cap = 10;
  CHECK_THROWS_AS(ground_rules(rb, *s, tight), CapError);
}

TEST_CASE("strict closure derives, records and refuses contradictions") {
  auto rules = std::vector<GroundRule>{
      mk_rule("ra", {lit("a")}, {lit("b"), lit("c")}),
      mk_rule("rb", {lit("c")}, {lit("d")}),
  };

  SUBCASE("chain derivation with trace") {
    Trace trace;
    LiteralSet s = strict_closure({lit("a")}, rules, &trace);
    CHECK(s == LiteralSet{lit("a"), lit("b"), lit("c"), lit("d")});
    REQUIRE(trace.count(lit("d")));
    CHECK(trace.at(lit("d")).source == TraceEntry::Source::Rule);
    CHECK(trace.at(lit("d")).id == "rb");
    CHECK(trace.at(lit("d")).premises == std::vector<Literal>{lit("c")});
  }

  SUBCASE("conflicting facts throw") {
    CHECK_THROWS_AS(strict_closure({lit("a"), lit("a", false)}, rules),
                    ConflictError);
  }

  SUBCASE("a derivation that contradicts a fact throws with the pair") {
    auto flip = std::vector<GroundRule>{
        mk_rule("rx", {lit("a")}, {lit("b", false)})};
    try {
      strict_closure({lit("a"), lit("b")}, flip);
      FAIL("expected a conflict");
    } catch (const ConflictError& e) {
      CHECK(e.a.atom == e.b.atom);
      CHECK(e.a.sign != e.b.sign);
    }
  }

  SUBCASE("closure is monotone in the input") {
    LiteralSet small = strict_closure({lit("a")}, rules);
    LiteralSet large = strict_closure({lit("a"), lit("e")}, rules);
    CHECK(std::includes(large.begin(), large.end(), small.begin(),
                        small.end()));
  }
}

TEST_CASE("applicability checks prerequisites and justifications") {
  GroundDefault d = mk_default("d", {lit("a")}, {lit("p")});
  CHECK(applicable(d, {lit("a")}));
  CHECK_FALSE(applicable(d, {}));
  CHECK_FALSE(applicable(d, {lit("a"), lit("p", false)}));

  GroundDefault semi = mk_default("s", {lit("a")}, {lit("p")}, {lit("c")});
  CHECK(applicable(semi, {lit("a")}));
  CHECK_FALSE(applicable(semi, {lit("a"), lit("c", false)}));
}

TEST_CASE("a pair of opposed normal defaults yields exactly two extensions") {
  LiteralSet facts = {lit("a")};
  std::vector<GroundRule> rules;
  auto defaults = std::vector<GroundDefault>{
      mk_default("da", {lit("a")}, {lit("p")}),
      mk_default("db", {lit("a")}, {lit("p", false)}),
  };

  bool truncated = true;
  auto family = enumerate_extensions(facts, rules, defaults, {}, &truncated);
  REQUIRE(family.size() == 2);
  CHECK_FALSE(truncated);
  std::set<LiteralSet> sets;
  for (const auto& e : family) sets.insert(e.literals);
  CHECK(sets.count({lit("a"), lit("p")}));
  CHECK(sets.count({lit("a"), lit("p", false)}));

  SUBCASE("the deterministic path takes the first default in scan order") {
    auto picked = compute_extension(facts, rules, defaults);
    REQUIRE(picked.has_value());
    CHECK(picked->literals == LiteralSet{lit("a"), lit("p")});
    CHECK(picked->applied == std::vector<std::string>{"da"});
  }

  SUBCASE("the fixpoint check accepts exactly the two members") {
    CHECK(is_extension({lit("a"), lit("p")}, facts, rules, defaults));
    CHECK(is_extension({lit("a"), lit("p", false)}, facts, rules, defaults));
    CHECK_FALSE(is_extension({lit("a")}, facts, rules, defaults));
    CHECK_FALSE(is_extension({lit("a"), lit("p"), lit("p", false)}, facts,
                             rules, defaults));
  }
}

TEST_CASE("a self-defeating default leaves no extension") {
  LiteralSet facts;
  auto rules = std::vector<GroundRule>{
      mk_rule("rx", {lit("p")}, {lit("p", false)})};
  auto defaults =
      std::vector<GroundDefault>{mk_default("d", {}, {lit("p")})};

  CHECK(enumerate_extensions(facts, rules, defaults).empty());
  CHECK_FALSE(compute_extension(facts, rules, defaults).has_value());
}

TEST_CASE("exhaustive search refuses too many reachable defaults") {
  LiteralSet facts = {lit("a")};
  std::vector<GroundDefault> defaults;
  for (int i = 0; i < 5; ++i)
    defaults.push_back(
        mk_default("d" + std::to_string(i), {lit("a")},
                   {lit("p" + std::to_string(i))}));
  EngineOptions tight;
  tight.subset_cap = 4;
  CHECK_THROWS_WITH_AS(enumerate_extensions(facts, {}, defaults, tight),
                       doctest::Contains("use the deterministic mode"),
                       CapError);

  SUBCASE("unreachable defaults do not count against the cap") {
    EngineOptions cap5 = tight;
    cap5.subset_cap = 5;
    defaults.push_back(mk_default("dx", {lit("never")}, {lit("q")}));
    auto family = enumerate_extensions(facts, {}, defaults, cap5);
    REQUIRE(family.size() == 1);
    CHECK(family[0].literals.size() == 6);
  }
}

TEST_CASE("stratified run of the rear-end scenario") {
  const RuleBase& rb = builtin_rulebase();
  const Scenario* s = find_builtin_scenario("b21");
  RunResult r = run_strata(rb, *s);

  CHECK(r.status == Status::AnomalyFound);
  REQUIRE(r.extensions.size() == 1);
  REQUIRE(r.anomalies.size() == 1);

  Atom ban;
  ban.modality = Modality::BasicAnomaly;
  ban.property = Term::constant("stops");
  ban.subject = Term::constant("B");
  ban.time = TimeExpr::literal(1);
  CHECK(r.anomalies[0] == std::vector<Literal>{pos(ban)});

  REQUIRE(r.stratum_log.size() == 3);
  CHECK(r.stratum_log[0].stratum == 3);
  CHECK(r.stratum_log[0].added.empty());
  CHECK(r.stratum_log[1].stratum == 2);
  CHECK(r.stratum_log[1].added.size() == 4);
  CHECK_FALSE(r.stratum_log[1].anomaly);
  CHECK(r.stratum_log[2].stratum == 1);
  CHECK(r.stratum_log[2].anomaly);

  SUBCASE("the trace connects the anomaly to its support") {
    const Trace& trace = r.extensions[0].trace;
    REQUIRE(trace.count(pos(ban)));
    CHECK(trace.at(pos(ban)).id == "rf");
  }
}

TEST_CASE("stratified and global runs agree on anomalies") {
  const RuleBase& rb = builtin_rulebase();
  for (const char* name : {"b21", "b21_no_control", "bend", "perturb", "calm"}) {
    CAPTURE(name);
    const Scenario* s = find_builtin_scenario(name);
    REQUIRE(s != nullptr);
    RunOptions global;
    global.use_strata = false;
    RunResult with = run_strata(rb, *s);
    RunResult without = run_strata(rb, *s, global);
    CHECK(with.status == without.status);
    REQUIRE(with.anomalies.size() == 1);
    REQUIRE(without.anomalies.size() == 1);
    CHECK(with.anomalies[0] == without.anomalies[0]);
  }
}

TEST_CASE("the blocked-duty scenario stays anomaly free") {
  const RuleBase& rb = builtin_rulebase();
  const Scenario* s = find_builtin_scenario("b21_no_control");
  RunResult r = run_strata(rb, *s);
  CHECK(r.status == Status::NoAnomaly);

  Atom must_stop;
  must_stop.modality = Modality::MustDo;
  must_stop.property = Term::constant("stops");
  must_stop.subject = Term::constant("B");
  must_stop.time = TimeExpr::literal(1);
  for (const auto& ext : r.extensions)
    CHECK_FALSE(ext.literals.count(pos(must_stop)));
}

TEST_CASE("inconsistent facts surface as a status with the clashing pair") {
  RuleBase rb = parse_rb("predicate q/1 layer 1.\n");
  Scenario s = parse_scn(
      "scenario s.\nagents F.\nstates 0..1.\n"
      "fact holds(q, F, 0).\nfact -holds(q, F, 0).\n");
  RunResult r = run_strata(rb, s);
  CHECK(r.status == Status::InconsistentFacts);
  CHECK(r.extensions.empty());
  REQUIRE(r.conflict.has_value());
  CHECK(r.conflict->first.atom == r.conflict->second.atom);
  CHECK(r.conflict->first.sign != r.conflict->second.sign);
}

TEST_CASE("an anomaly found in a high stratum halts the descent") {
  RuleBase rb = parse_rb(
      "predicate foo/1 layer 2.\n"
      "rule ra layer 2: b_an(foo, Ag, T) <- holds(foo, Ag, T).\n");
  Scenario s = parse_scn(
      "scenario s.\nagents E.\nstates 0..1.\nfact holds(foo, E, 0).\n");
  RunResult r = run_strata(rb, s);
  CHECK(r.status == Status::AnomalyFound);
  REQUIRE(r.stratum_log.size() == 2);
  CHECK(r.stratum_log[0].stratum == 3);
  CHECK(r.stratum_log[1].stratum == 2);
  CHECK(r.stratum_log[1].anomaly);
}

TEST_CASE("a theory without extensions raises an engine error") {
  RuleBase rb = parse_rb(
      "predicate q/1 layer 1.\n"
      "rule rx layer 1: -holds(q, Ag, T) <- holds(q, Ag, T).\n"
      "default dx layer 1: : holds(q, Ag, T).\n");
  Scenario s = parse_scn("scenario s.\nagents F.\nstates 0..1.\n");
  CHECK_THROWS_WITH_AS(run_strata(rb, s),
                       doctest::Contains("admits no extension"), EngineError);
}

TEST_CASE("random ground theories match the reference semantics") {
  EngineOptions wide;
  wide.max_extensions = 128;
  for (int seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    std::mt19937 rng(1000 + seed);
    auto th = testsupport::make_random_theory(rng);
    auto expected =
        testsupport::oracle_extensions(th.facts, th.rules, th.defaults);

    if (expected.base_inconsistent) {
      // The strict closure of the facts alone clashes: no consistent
      // extension can exist, and the deterministic path reports the
      // conflict instead of inventing one.
      CHECK(enumerate_extensions(th.facts, th.rules, th.defaults, wide)
                .empty());
      CHECK_THROWS_AS(compute_extension(th.facts, th.rules, th.defaults, wide),
                      ConflictError);
      continue;
    }
    auto family = enumerate_extensions(th.facts, th.rules, th.defaults, wide);
    std::set<LiteralSet> got;
    for (const auto& e : family) got.insert(e.literals);
    CHECK(got == expected.extensions);

    auto picked = compute_extension(th.facts, th.rules, th.defaults, wide);
    CHECK(picked.has_value() == !expected.extensions.empty());
    if (picked) CHECK(expected.extensions.count(picked->literals) == 1);
  }
}
