#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "norma/engine.hpp"
#include "norma/rulebase.hpp"

namespace norma {

/// A detected basic anomaly plus the material needed to explain it.
/// Kind F is an unfulfilled norm: the agent had the duty and the
/// ability at state t yet the property failed at t+1. Kind FPrime is
/// an abnormal perturbation.
struct AnomalyReport {
  enum class Kind { F, FPrime };
  Kind kind = Kind::F;
  std::string predicate;  // surface property name (combined form kept)
  std::string agent;
  int state = 0;
  std::optional<std::pair<int, int>> transition;  // (t, t+1) for kind F
  std::vector<std::pair<Literal, std::string>> support;  // literal, rule id
};

/// Extracts anomaly reports from a run: one per distinct anomaly atom,
/// first extension wins, ordered by (state, agent, predicate). Warns on
/// `warnings` when witnesses disagree about the anomalous transition.
std::vector<AnomalyReport> collect_anomalies(const RunResult& result,
                                             std::vector<std::string>* warnings = nullptr);

/// The one-sentence reading of an anomaly.
std::string explain(const AnomalyReport& report);

struct RenderOptions {
  bool json = false;
  bool trace = false;
};

/// Full report, text or JSON. Deterministic byte-for-byte for a given
/// run result.
std::string render_report(const RunResult& result,
                          const std::vector<AnomalyReport>& anomalies,
                          const RenderOptions& options = {});

}  // namespace norma
