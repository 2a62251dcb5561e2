#include "eslrv/harness/runner.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace eslrv::harness {

namespace {

CaseResult run_case(const Dataset& dataset, std::size_t index, const AgentFactory& factory,
                    const RunOptions& options) {
  auto start = std::chrono::steady_clock::now();
  verifier::VerificationCase c = dataset.case_at(index);
  const DatasetRow& src = dataset.rows[index];
  CaseResult out;
  out.row.id = c.id;
  out.row.label = c.label;
  try {
    AgentPair pair = factory();
    agents::Agent perception(agents::Role::Perception, *pair.perception, pair.perception_prompts);
    agents::Agent target(agents::Role::Target, *pair.target, pair.target_prompts);
    out.verdict = verifier::verify(c, perception, target, options.verify);
    if (src.llm_flags_violation) {
      out.row.llm_flags_violation = src.llm_flags_violation;
    } else {
      try {
        interp::DomainOfDiscourse d{c.context, c.llm_output, {}};
        out.row.llm_flags_violation = target.judge_violation(c.spec, d);
      } catch (const agents::AgentError& e) {
        out.verdict.diagnostics.push_back(std::string("standalone verdict unavailable: ") + e.what());
      }
    }
  } catch (const std::exception& e) {
    out.verdict = verifier::Verdict{};
    out.verdict.status = verifier::Status::Fail;
    out.verdict.reason = e.what();
  }
  out.row.rv = out.verdict.status;
  out.row.stage = out.verdict.stage;
  out.row.reason = out.verdict.reason;
  if (options.deterministic) {
    out.verdict.timings = {};
  } else {
    out.row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

}  // namespace

std::vector<CaseResult> run_dataset(const Dataset& dataset, const AgentFactory& factory, const RunOptions& options) {
  std::vector<CaseResult> results(dataset.rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) {
      results[i] = run_case(dataset, i, factory, options);
    }
  };
  unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || results.size() < 2) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs && t < results.size(); ++t) pool.emplace_back(worker);
  }
  return results;
}

std::vector<CaseRow> rows_of(const std::vector<CaseResult>& results) {
  std::vector<CaseRow> rows;
  rows.reserve(results.size());
  for (const auto& r : results) rows.push_back(r.row);
  return rows;
}

}  // namespace eslrv::harness
