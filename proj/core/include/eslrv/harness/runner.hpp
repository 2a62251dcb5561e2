#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "eslrv/agents/agent.hpp"
#include "eslrv/harness/dataset.hpp"
#include "eslrv/harness/metrics.hpp"
#include "eslrv/verifier/verify.hpp"

namespace eslrv::harness {

struct AgentPair {
  std::shared_ptr<agents::ChatBackend> perception;
  std::shared_ptr<agents::ChatBackend> target;
  agents::PromptSet perception_prompts = agents::PromptSet::builtin();
  agents::PromptSet target_prompts = agents::PromptSet::builtin();
};

/// Called once per case, possibly from several threads at once.
using AgentFactory = std::function<AgentPair()>;

struct RunOptions {
  unsigned jobs = 1;
  /// Zero wall times and timings so outputs compare byte for byte.
  bool deterministic = false;
  verifier::VerifyOptions verify;
};

struct CaseResult {
  CaseRow row;
  verifier::Verdict verdict;
};

/// Verifies every case with fresh agents, up to `jobs` at a time. Results
/// keep dataset order; a failing case becomes a Fail row.
std::vector<CaseResult> run_dataset(const Dataset& dataset, const AgentFactory& factory, const RunOptions& options);

std::vector<CaseRow> rows_of(const std::vector<CaseResult>& results);

}  // namespace eslrv::harness
