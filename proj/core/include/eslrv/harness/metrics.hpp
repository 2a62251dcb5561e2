#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "eslrv/verifier/verify.hpp"

namespace eslrv::harness {

/// One line of the per-case JSONL output.
struct CaseRow {
  std::string id;
  std::optional<verifier::Label> label;
  /// Standalone verdict of the target; absent when it could not be obtained.
  std::optional<bool> llm_flags_violation;
  verifier::Status rv = verifier::Status::Consistent;
  std::optional<verifier::Stage> stage;
  std::string reason;
  double wall_ms = 0;

  /// "TP", "FN", "TN" or "FP" under the combined LLM + verifier verdict.
  std::optional<std::string> combined() const;
  friend bool operator==(const CaseRow&, const CaseRow&) = default;
};

nlohmann::ordered_json to_json(const CaseRow& row);
/// Throws std::invalid_argument on a malformed row.
CaseRow row_from_json(const nlohmann::json& j);

struct Rate {
  std::size_t hits = 0;
  std::size_t total = 0;
  /// Undefined without cases.
  std::optional<double> value() const;
};

struct MetricsSummary {
  std::size_t cases = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t consistent = 0;
  std::size_t inconsistent = 0;
  std::size_t fail = 0;
  std::size_t internal = 0;
  std::size_t followup = 0;
  Rate tpr_llm;
  Rate tnr_llm;
  Rate tpr_combined;
  Rate tnr_combined;
  double mean_wall_ms = 0;
};

/// Combined true positive: positive label and (LLM flags a violation or the
/// verifier says Inconsistent). Combined true negative: negative label, LLM
/// flags nothing and the verifier says Consistent. Unlabelled rows count
/// only toward the verdict tallies.
MetricsSummary compute_metrics(std::span<const CaseRow> rows);

nlohmann::ordered_json to_json(const MetricsSummary& s);

/// "87.5%" or "n/a".
std::string format_rate(const Rate& r);

}  // namespace eslrv::harness
