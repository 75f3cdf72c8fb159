#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "norma/logic.hpp"
#include "norma/rulebase.hpp"

namespace norma {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The fact set (or a stratum's input) contains a complementary pair.
class ConflictError : public EngineError {
 public:
  ConflictError(Literal a, Literal b);
  Literal a, b;
};

/// A resource cap was hit (grounding size, subset enumeration width).
class CapError : public EngineError {
 public:
  using EngineError::EngineError;
};

struct EngineOptions {
  int ground_cap = 50000;     // total ground rule + default instances
  int subset_cap = 20;        // reachable defaults enumerable exhaustively
  int max_extensions = 8;     // extensions reported by enumeration
};

struct GroundRule {
  std::string label;  // "id[Var=val,...]"
  std::string origin; // rule id
  int layer = 1;
  std::vector<Literal> body;
  std::vector<Literal> head;
};

struct GroundDefault {
  std::string label;
  std::string origin;
  int layer = 1;
  RuleOrigin kind = RuleOrigin::User;
  std::vector<Literal> prerequisites;
  std::vector<Literal> consequents;
  std::vector<Literal> justifications;  // consequents + constraint
};

struct GroundProgram {
  std::vector<GroundRule> rules;
  std::vector<GroundDefault> defaults;
};

/// Instantiates the rule base over the scenario's agents, states and
/// property universe. Distinct variables of one rule take pairwise
/// distinct values unless the rule allows otherwise. Throws CapError
/// when the instance count exceeds options.ground_cap.
GroundProgram ground_rules(const RuleBase& rb, const Scenario& s,
                           const EngineOptions& options = {});

/// The ground persistence defaults only: forward persistence for
/// static predicates, backward persistence where declared.
std::vector<GroundDefault> generate_persistence(
    const RuleBase& rb, const Scenario& s, const EngineOptions& options = {});

/// How a literal entered the current set, for explanations.
struct TraceEntry {
  enum class Source { Given, StaticDecl, Rule, Default };
  Source source = Source::Given;
  std::string id;  // rule or default origin id
  std::vector<Literal> premises;
};

using Trace = std::map<Literal, TraceEntry>;

/// Closes `facts` under the strict rules. Throws ConflictError when a
/// complementary pair arises. Records derivations for new literals in
/// `trace` (first writer wins) when a trace is supplied.
LiteralSet strict_closure(const LiteralSet& facts,
                          const std::vector<GroundRule>& rules,
                          Trace* trace = nullptr);

/// Default applicability: prerequisites present, no justification
/// contradicted.
bool applicable(const GroundDefault& d, const LiteralSet& current);

struct Extension {
  LiteralSet literals;
  std::vector<std::string> applied;  // ground default labels, in order
  Trace trace;
};

/// Deterministic credulous extension: repeatedly applies the first
/// applicable default in a fixed total order and re-closes, then
/// verifies the fixpoint with is_extension. Returns nothing when no
/// extension exists (possible with semi-normal defaults). Conflicting
/// facts throw ConflictError.
std::optional<Extension> compute_extension(
    const LiteralSet& facts, const std::vector<GroundRule>& rules,
    const std::vector<GroundDefault>& defaults,
    const EngineOptions& options = {});

/// All extensions, found by exhaustive subset generation over the
/// reachable defaults, each candidate checked with is_extension.
/// Throws CapError when more than options.subset_cap defaults are
/// reachable. Sets *truncated when options.max_extensions cut the list.
std::vector<Extension> enumerate_extensions(
    const LiteralSet& facts, const std::vector<GroundRule>& rules,
    const std::vector<GroundDefault>& defaults,
    const EngineOptions& options = {}, bool* truncated = nullptr);

/// Checks the defining fixpoint property of a candidate extension by
/// monotone reconstruction against the fixed candidate.
bool is_extension(const LiteralSet& candidate, const LiteralSet& facts,
                  const std::vector<GroundRule>& rules,
                  const std::vector<GroundDefault>& defaults);

enum class Status {
  NoAnomaly,
  AnomalyFound,
  InconsistentFacts,
  ExtensionLimitHit,
};

const char* status_name(Status s);

struct StratumLogEntry {
  int stratum = 0;  // 3, 2, 1; 0 means a single global pass
  std::vector<Literal> added;
  bool anomaly = false;
};

struct RunResult {
  Status status = Status::NoAnomaly;
  std::vector<Extension> extensions;
  std::vector<std::vector<Literal>> anomalies;  // per extension, B-An literals
  std::vector<StratumLogEntry> stratum_log;
  std::optional<std::pair<Literal, Literal>> conflict;
  bool truncated = false;
};

struct RunOptions {
  EngineOptions engine;
  bool use_strata = true;
  bool all_extensions = false;
};

/// End-to-end run: grounds the rule base, seeds the scenario facts and
/// static declarations, then evaluates stratum by stratum from the
/// outermost layer down to the kernel, stopping as soon as a basic
/// anomaly is derived. With use_strata off, one global pass; with
/// all_extensions, global exhaustive enumeration.
RunResult run_strata(const RuleBase& rb, const Scenario& s,
                     const RunOptions& options = {});

}  // namespace norma
