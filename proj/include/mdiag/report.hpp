#pragma once

// Machine-readable run reports: one record per verdict.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdiag/lab.hpp"
#include "mdiag/theorem_checker.hpp"

namespace mdiag {

using Json = nlohmann::ordered_json;

struct ReportRecord {
  std::string theorem_id;
  bool holds = false;
  std::optional<Json> certificate;
  std::optional<Json> counterexample;
  std::optional<int> n;
  std::optional<std::uint32_t> p;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t elapsed_ms = 0;
  /// Conclusion text, flags and metrics.
  Json details = Json::object();

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

struct RunReport {
  std::vector<std::string> command;
  std::uint64_t seed = kDefaultSeed;
  std::vector<ReportRecord> records;
  /// Output of informational commands (tables, sums); null otherwise.
  Json result;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline Json to_json(const ReportRecord& r) {
  Json j;
  j["theorem_id"] = r.theorem_id;
  j["holds"] = r.holds;
  if (r.certificate) j["certificate"] = *r.certificate;
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  if (r.n) j["n"] = *r.n;
  if (r.p) j["p"] = *r.p;
  j["seed"] = r.seed;
  j["elapsed_ms"] = r.elapsed_ms;
  j["details"] = r.details;
  return j;
}

inline ReportRecord record_from_json(const Json& j) {
  ReportRecord r;
  r.theorem_id = j.at("theorem_id").get<std::string>();
  r.holds = j.at("holds").get<bool>();
  if (j.contains("certificate")) r.certificate = j.at("certificate");
  if (j.contains("counterexample")) r.counterexample = j.at("counterexample");
  if (j.contains("n")) r.n = j.at("n").get<int>();
  if (j.contains("p")) r.p = j.at("p").get<std::uint32_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
  r.details = j.value("details", Json::object());
  return r;
}

inline Json to_json(const RunReport& r) {
  Json j;
  j["command"] = r.command;
  j["seed"] = r.seed;
  j["records"] = Json::array();
  for (const auto& rec : r.records) j["records"].push_back(to_json(rec));
  j["result"] = r.result;
  return j;
}

inline RunReport report_from_json(const Json& j) {
  RunReport r;
  r.command = j.at("command").get<std::vector<std::string>>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& rec : j.at("records")) r.records.push_back(record_from_json(rec));
  r.result = j.value("result", Json());
  return r;
}

inline std::string emit_report(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

inline RunReport parse_report(const std::string& text) {
  try {
    return report_from_json(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

inline Json to_json(const MarkedDiagram& d) { return d.coeffs(); }

inline Json to_json(const InequalityTrace& t) {
  Json j;
  j["kind"] = "inequality";
  j["sum"] = t.sum;
  j["threshold"] = t.threshold;
  j["first_failing"] = t.first_failing ? Json(*t.first_failing) : Json();
  return j;
}

inline Json to_json(const PartitionCertificate& c) {
  Json j;
  j["kind"] = "partition";
  j["blocks"] = c.blocks;
  j["block_sums"] = Json::array();
  for (const auto& s : c.block_sums) j["block_sums"].push_back(to_json(s));
  return j;
}

inline Json to_json(const TypeRSWitness& w) {
  Json j;
  j["kind"] = "type_rs";
  j["r"] = w.r;
  j["s"] = w.s;
  j["blocks"] = w.blocks;
  j["anchors"] = w.anchors;
  return j;
}

inline Json certificate_json(const Certificate& c) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PropACertificate>) {
          Json j = to_json(x.partition);
          j["trace"] = to_json(x.trace);
          return j;
        } else {
          return to_json(x);
        }
      },
      c);
}

inline ReportRecord to_record(const TheoremVerdict& v, std::uint64_t seed) {
  ReportRecord r;
  r.theorem_id = to_string(v.theorem_id);
  r.holds = v.holds;
  r.seed = seed;
  if (v.certificate) r.certificate = certificate_json(*v.certificate);
  if (!v.holds && v.certificate) {
    if (const auto* t = std::get_if<InequalityTrace>(&*v.certificate); t && t->first_failing) {
      const auto i = *t->first_failing;
      r.counterexample = Json{{"coordinate", i}, {"sum", t->sum[i]}, {"threshold", t->threshold[i]}};
    }
  }
  r.details["conclusion_text"] = v.conclusion_text;
  if (v.inconclusive) r.details["inconclusive"] = true;
  if (v.conjectural) r.details["conjectural"] = true;
  return r;
}

inline ReportRecord to_record(const LabReport& l) {
  ReportRecord r;
  r.theorem_id = "lab." + l.check;
  r.holds = l.holds;
  r.n = l.n;
  r.p = l.p;
  r.seed = l.seed;
  Json cert;
  cert["checked"] = l.checked;
  if (l.witness) cert["witness"] = *l.witness;
  r.certificate = cert;
  if (l.violations > 0) r.counterexample = Json{{"violations", l.violations}, {"examples", l.counterexamples}};
  Json metrics = Json::object();
  for (const auto& [k, v] : l.metrics) metrics[k] = v;
  r.details["metrics"] = metrics;
  return r;
}

}  // namespace mdiag
