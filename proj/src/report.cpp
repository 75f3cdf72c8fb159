#include "norma/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "norma/printer.hpp"

namespace norma {

namespace {

std::string property_name(const Term& property) {
  return property.str();
}

const TraceEntry* trace_entry(const Trace& trace, const Literal& lit) {
  auto it = trace.find(lit);
  return it == trace.end() ? nullptr : &it->second;
}

std::string derived_by(const Trace& trace, const Literal& lit) {
  const TraceEntry* entry = trace_entry(trace, lit);
  if (!entry) return "given";
  switch (entry->source) {
    case TraceEntry::Source::Given: return "given";
    case TraceEntry::Source::StaticDecl: return "static";
    case TraceEntry::Source::Rule:
    case TraceEntry::Source::Default: return entry->id;
  }
  return "given";
}

}  // namespace

std::vector<AnomalyReport> collect_anomalies(
    const RunResult& result, std::vector<std::string>* warnings) {
  std::vector<AnomalyReport> out;
  std::set<Atom> seen;
  for (size_t i = 0; i < result.extensions.size(); ++i) {
    if (i >= result.anomalies.size()) break;
    const Extension& ext = result.extensions[i];
    for (const auto& lit : result.anomalies[i]) {
      if (!seen.insert(lit.atom).second) continue;  // first extension wins

      AnomalyReport report;
      report.predicate = property_name(lit.atom.property);
      report.agent = lit.atom.subject ? lit.atom.subject->str() : "";
      report.state = lit.atom.time ? lit.atom.time->state : 0;

      const TraceEntry* entry = trace_entry(ext.trace, lit);
      bool perturbation = false;
      if (entry) {
        for (const auto& premise : entry->premises) {
          if (premise.atom.modality == Modality::AbnormalPerturbation)
            perturbation = true;
          report.support.emplace_back(premise,
                                      derived_by(ext.trace, premise));
        }
      }
      report.kind =
          perturbation ? AnomalyReport::Kind::FPrime : AnomalyReport::Kind::F;
      if (report.kind == AnomalyReport::Kind::F)
        report.transition = std::make_pair(report.state, report.state + 1);
      out.push_back(std::move(report));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const AnomalyReport& a, const AnomalyReport& b) {
              if (a.state != b.state) return a.state < b.state;
              if (a.agent != b.agent) return a.agent < b.agent;
              return a.predicate < b.predicate;
            });
  if (warnings) {
    std::set<int> states;
    for (const auto& r : out) states.insert(r.state);
    if (states.size() > 1)
      warnings->push_back(
          "anomalies sit in different transitions; the explanations below "
          "may interact");
  }
  return out;
}

namespace {

std::string failure_phrase(const std::string& predicate) {
  if (predicate == "stops") return "stop";
  if (predicate == "runs_slowly") return "slow down";
  if (predicate == "control") return "keep control";
  if (predicate == "starts") return "start";
  if (predicate == "runs_backwards") return "back up";
  return "do " + predicate;
}

}  // namespace

std::string explain(const AnomalyReport& report) {
  std::ostringstream out;
  if (report.kind == AnomalyReport::Kind::F) {
    out << "because vehicle " << report.agent << " did not "
        << failure_phrase(report.predicate) << " at state "
        << report.state + 1;
  } else {
    out << "because of an abnormal perturbation (" << report.predicate
        << ") affecting vehicle " << report.agent << " at state "
        << report.state;
  }
  return out.str();
}

namespace {

const char* kind_name(AnomalyReport::Kind kind) {
  return kind == AnomalyReport::Kind::F ? "norm_violation"
                                        : "abnormal_perturbation";
}

// Trace tree rooted at the anomaly, premises indented under their
// conclusions.
void render_trace_tree(std::ostringstream& out, const Trace& trace,
                       const Literal& lit, int depth,
                       std::set<Literal>& shown) {
  out << std::string(static_cast<size_t>(depth) * 2 + 2, ' ');
  out << render_literal(lit);
  const TraceEntry* entry = trace_entry(trace, lit);
  if (!entry || entry->source == TraceEntry::Source::Given) {
    out << " (given)\n";
    return;
  }
  if (entry->source == TraceEntry::Source::StaticDecl) {
    out << " (static declaration)\n";
    return;
  }
  out << " [" << entry->id << "]";
  if (!shown.insert(lit).second) {
    out << " (shown above)\n";
    return;
  }
  out << '\n';
  for (const auto& premise : entry->premises)
    render_trace_tree(out, trace, premise, depth + 1, shown);
}

std::string render_text(const RunResult& result,
                        const std::vector<AnomalyReport>& anomalies,
                        const RenderOptions& options) {
  std::ostringstream out;
  if (result.status == Status::InconsistentFacts) {
    out << "the facts are inconsistent\n";
    if (result.conflict)
      out << "conflict: " << render_literal(result.conflict->first) << " vs "
          << render_literal(result.conflict->second) << '\n';
    out << '\n';
    out << "status: " << status_name(result.status) << '\n';
    return out.str();
  }

  if (anomalies.empty()) {
    out << "no anomaly found\n";
  } else {
    for (const auto& report : anomalies) out << explain(report) << '\n';
  }
  out << '\n';
  out << "status: " << status_name(result.status) << '\n';
  for (const auto& report : anomalies) {
    out << "anomaly: b_an(" << report.predicate << ", " << report.agent
        << ", " << report.state << ")\n";
    out << "  kind: "
        << (report.kind == AnomalyReport::Kind::F ? "norm violation"
                                                  : "abnormal perturbation")
        << '\n';
    if (report.transition)
      out << "  transition: state " << report.transition->first << " -> state "
          << report.transition->second << '\n';
    for (const auto& [premise, rule] : report.support)
      out << "  support: " << render_literal(premise) << " (" << rule << ")\n";
  }
  out << "extensions: " << result.extensions.size();
  if (result.truncated) out << " (truncated)";
  out << '\n';

  if (!result.stratum_log.empty()) {
    out << "strata:";
    for (size_t i = 0; i < result.stratum_log.size(); ++i) {
      const auto& entry = result.stratum_log[i];
      out << (i ? " | " : " ");
      if (entry.stratum == 0)
        out << "global";
      else
        out << entry.stratum;
      out << " (+" << entry.added.size();
      if (entry.anomaly) out << ", anomaly";
      out << ")";
    }
    out << '\n';
  }

  if (options.trace && !result.extensions.empty()) {
    const Extension& ext = result.extensions.front();
    out << "trace:\n";
    std::set<Literal> shown;
    bool printed = false;
    for (const auto& lit : ext.literals) {
      if (!lit.positive() || lit.atom.modality != Modality::BasicAnomaly)
        continue;
      render_trace_tree(out, ext.trace, lit, 0, shown);
      printed = true;
    }
    if (!printed) out << "  (no anomaly to trace)\n";
  }
  return out.str();
}

std::string render_json(const RunResult& result,
                        const std::vector<AnomalyReport>& anomalies,
                        const RenderOptions& options) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["status"] = status_name(result.status);
  if (result.conflict) {
    doc["conflict"] = {
        {"a", render_literal(result.conflict->first)},
        {"b", render_literal(result.conflict->second)},
    };
  }
  doc["anomalies"] = json::array();
  for (const auto& report : anomalies) {
    json a;
    a["kind"] = kind_name(report.kind);
    a["predicate"] = report.predicate;
    a["agent"] = report.agent;
    a["state"] = report.state;
    if (report.transition)
      a["transition"] = {report.transition->first, report.transition->second};
    a["explanation"] = explain(report);
    a["support"] = json::array();
    for (const auto& [premise, rule] : report.support) {
      a["support"].push_back(
          {{"literal", render_literal(premise)}, {"rule", rule}});
    }
    doc["anomalies"].push_back(std::move(a));
  }
  doc["extensions_count"] = result.extensions.size();
  if (result.truncated) doc["truncated"] = true;
  doc["stratum_log"] = json::array();
  for (const auto& entry : result.stratum_log) {
    doc["stratum_log"].push_back({{"stratum", entry.stratum},
                                  {"added", entry.added.size()},
                                  {"anomaly", entry.anomaly}});
  }
  if (options.trace && !result.extensions.empty()) {
    const Extension& ext = result.extensions.front();
    json trace = json::object();
    for (const auto& [lit, entry] : ext.trace) {
      json t;
      switch (entry.source) {
        case TraceEntry::Source::Given: t["source"] = "given"; break;
        case TraceEntry::Source::StaticDecl: t["source"] = "static"; break;
        case TraceEntry::Source::Rule: t["source"] = "rule"; break;
        case TraceEntry::Source::Default: t["source"] = "default"; break;
      }
      if (!entry.id.empty()) t["rule"] = entry.id;
      t["premises"] = json::array();
      for (const auto& premise : entry.premises)
        t["premises"].push_back(render_literal(premise));
      trace[render_literal(lit)] = std::move(t);
    }
    doc["trace"] = std::move(trace);
  }
  return doc.dump(2) + "\n";
}

}  // namespace

std::string render_report(const RunResult& result,
                          const std::vector<AnomalyReport>& anomalies,
                          const RenderOptions& options) {
  return options.json ? render_json(result, anomalies, options)
                      : render_text(result, anomalies, options);
}

}  // namespace norma
