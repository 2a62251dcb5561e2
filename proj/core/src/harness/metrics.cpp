#include "eslrv/harness/metrics.hpp"

#include <cstdio>

namespace eslrv::harness {

using verifier::Stage;
using verifier::Status;

std::optional<std::string> CaseRow::combined() const {
  if (!label) return std::nullopt;
  bool llm = llm_flags_violation.value_or(false);
  if (verifier::is_positive(*label)) return (llm || rv == Status::Inconsistent) ? "TP" : "FN";
  return (!llm && rv == Status::Consistent) ? "TN" : "FP";
}

nlohmann::ordered_json to_json(const CaseRow& row) {
  using J = nlohmann::ordered_json;
  J j;
  j["id"] = row.id;
  j["label"] = row.label ? J(std::string(to_string(*row.label))) : J(nullptr);
  j["llm_verdict"] = row.llm_flags_violation ? J(*row.llm_flags_violation) : J(nullptr);
  j["rv_verdict"] = std::string(to_string(row.rv));
  j["stage"] = row.stage ? J(std::string(to_string(*row.stage))) : J(nullptr);
  j["combined"] = row.combined() ? J(*row.combined()) : J(nullptr);
  j["reason"] = row.reason;
  j["wall_ms"] = row.wall_ms;
  return j;
}

CaseRow row_from_json(const nlohmann::json& j) {
  auto bad = [&](const std::string& what) { return std::invalid_argument("bad result row: " + what + " in " + j.dump()); };
  if (!j.is_object() || !j.contains("id") || !j.contains("rv_verdict")) throw bad("missing id or rv_verdict");
  CaseRow r;
  try {
    r.id = j.at("id").get<std::string>();
    if (j.contains("label") && !j["label"].is_null()) {
      r.label = verifier::parse_label(j["label"].get<std::string>());
      if (!r.label) throw bad("label");
    }
    if (j.contains("llm_verdict") && !j["llm_verdict"].is_null()) r.llm_flags_violation = j["llm_verdict"].get<bool>();
    auto rv = verifier::parse_status(j.at("rv_verdict").get<std::string>());
    if (!rv) throw bad("rv_verdict");
    r.rv = *rv;
    if (j.contains("stage") && !j["stage"].is_null()) {
      std::string s = j["stage"].get<std::string>();
      if (s == "Internal") r.stage = Stage::Internal;
      else if (s == "FollowUp") r.stage = Stage::FollowUp;
      else throw bad("stage");
    }
    if (j.contains("reason")) r.reason = j["reason"].get<std::string>();
    if (j.contains("wall_ms")) r.wall_ms = j["wall_ms"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw bad(e.what());
  }
  return r;
}

std::optional<double> Rate::value() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(total);
}

MetricsSummary compute_metrics(std::span<const CaseRow> rows) {
  MetricsSummary s;
  double wall = 0;
  for (const auto& r : rows) {
    ++s.cases;
    wall += r.wall_ms;
    switch (r.rv) {
      case Status::Consistent: ++s.consistent; break;
      case Status::Inconsistent: ++s.inconsistent; break;
      case Status::Fail: ++s.fail; break;
    }
    if (r.stage == Stage::Internal) ++s.internal;
    if (r.stage == Stage::FollowUp) ++s.followup;
    if (!r.label) continue;
    bool llm = r.llm_flags_violation.value_or(false);
    auto combined = *r.combined();
    if (verifier::is_positive(*r.label)) {
      ++s.positives;
      ++s.tpr_llm.total;
      ++s.tpr_combined.total;
      if (llm) ++s.tpr_llm.hits;
      if (combined == "TP") ++s.tpr_combined.hits;
    } else {
      ++s.negatives;
      ++s.tnr_llm.total;
      ++s.tnr_combined.total;
      if (!llm) ++s.tnr_llm.hits;
      if (combined == "TN") ++s.tnr_combined.hits;
    }
  }
  s.mean_wall_ms = s.cases ? wall / static_cast<double>(s.cases) : 0.0;
  return s;
}

namespace {

nlohmann::ordered_json rate_json(const Rate& r) {
  nlohmann::ordered_json j;
  j["hits"] = r.hits;
  j["total"] = r.total;
  j["value"] = r.value() ? nlohmann::ordered_json(*r.value()) : nlohmann::ordered_json(nullptr);
  return j;
}

nlohmann::ordered_json delta(const Rate& combined, const Rate& llm) {
  if (!combined.value() || !llm.value()) return nullptr;
  return *combined.value() - *llm.value();
}

}  // namespace

nlohmann::ordered_json to_json(const MetricsSummary& s) {
  nlohmann::ordered_json j;
  j["cases"] = s.cases;
  j["positives"] = s.positives;
  j["negatives"] = s.negatives;
  j["verdicts"] = {{"Consistent", s.consistent}, {"Inconsistent", s.inconsistent}, {"Fail", s.fail}};
  j["stages"] = {{"Internal", s.internal}, {"FollowUp", s.followup}};
  j["llm"] = {{"tpr", rate_json(s.tpr_llm)}, {"tnr", rate_json(s.tnr_llm)}};
  j["combined"] = {{"tpr", rate_json(s.tpr_combined)}, {"tnr", rate_json(s.tnr_combined)}};
  j["delta"] = {{"tpr", delta(s.tpr_combined, s.tpr_llm)}, {"tnr", delta(s.tnr_combined, s.tnr_llm)}};
  j["mean_wall_ms"] = s.mean_wall_ms;
  return j;
}

std::string format_rate(const Rate& r) {
  auto v = r.value();
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", *v * 100.0);
  return buf;
}

}  // namespace eslrv::harness
