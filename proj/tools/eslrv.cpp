// eslrv: check ESL specs and verify LLM outputs against them.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eslrv/agents/agent.hpp"
#include "eslrv/esl/parser.hpp"
#include "eslrv/harness/config.hpp"
#include "eslrv/harness/dataset.hpp"
#include "eslrv/harness/metrics.hpp"
#include "eslrv/harness/runner.hpp"
#include "eslrv/verifier/verify.hpp"

namespace fs = std::filesystem;
using namespace eslrv;

namespace {

constexpr int kExitUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AgentFlags {
  std::vector<std::string> fixtures;
  std::string script;
  std::string config;
  std::string record_into;
  bool require_fixtures = false;
};

struct CaseFlags {
  std::string manifest;
  std::string spec;
  std::string context;
  std::string llm_output;
  int level = 2;
};

std::string plural(std::size_t n, const char* word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

esl::EslSpec load_spec(const std::string& path) {
  if (!fs::exists(path)) throw UsageError("spec file not found: " + path);
  return esl::parse_spec(harness::read_file(path));
}

std::string read_optional(const std::string& path) {
  if (path.empty()) return {};
  if (!fs::exists(path)) throw UsageError("file not found: " + path);
  return harness::read_file(path);
}

harness::AgentFactory make_factory(const AgentFlags& flags, const harness::Dataset* dataset) {
  std::vector<fs::path> fixtures(flags.fixtures.begin(), flags.fixtures.end());
  std::string script = flags.script;
  if (fixtures.empty() && script.empty() && dataset) {
    fixtures = dataset->fixtures;
    if (dataset->script) script = dataset->script->string();
  }
  if (flags.require_fixtures && fixtures.empty()) throw UsageError("replay needs --fixtures or a manifest with fixtures");
  if (!fixtures.empty() && !script.empty()) throw UsageError("--fixtures and --script are exclusive");

  harness::HarnessConfig cfg = harness::load_config(
      flags.config.empty() ? std::nullopt : std::optional<fs::path>(flags.config));
  agents::PromptSet pprompts = cfg.perception.prompt_dir.empty() ? agents::PromptSet::builtin()
                                                                 : agents::PromptSet::from_directory(cfg.perception.prompt_dir);
  agents::PromptSet tprompts = cfg.target.prompt_dir.empty() ? agents::PromptSet::builtin()
                                                             : agents::PromptSet::from_directory(cfg.target.prompt_dir);

  std::shared_ptr<agents::ChatBackend> shared;
  if (!fixtures.empty()) {
    shared = std::make_shared<agents::FixtureBackend>(agents::FixtureBackend::from_files(fixtures));
  } else if (!script.empty()) {
    shared = std::make_shared<agents::ScriptedBackend>(agents::ScriptedBackend::from_file(script));
  }
  std::shared_ptr<agents::FixtureWriter> writer;
  if (!flags.record_into.empty()) writer = std::make_shared<agents::FixtureWriter>(flags.record_into);

  return [=]() {
    harness::AgentPair pair;
    pair.perception_prompts = pprompts;
    pair.target_prompts = tprompts;
    if (shared) {
      pair.perception = pair.target = shared;
    } else {
      pair.perception = std::make_shared<agents::OpenAiBackend>(cfg.perception);
      pair.target = std::make_shared<agents::OpenAiBackend>(cfg.target);
    }
    if (writer) {
      bool same = pair.perception == pair.target;
      pair.perception = std::make_shared<agents::RecordingBackend>(pair.perception, writer);
      pair.target = same ? pair.perception : std::make_shared<agents::RecordingBackend>(pair.target, writer);
    }
    return pair;
  };
}

unsigned configured_jobs(const AgentFlags& flags) {
  return harness::load_config(flags.config.empty() ? std::nullopt : std::optional<fs::path>(flags.config)).jobs;
}

int exit_code(verifier::Status s) {
  switch (s) {
    case verifier::Status::Consistent: return 0;
    case verifier::Status::Inconsistent: return 1;
    case verifier::Status::Fail: return 2;
  }
  return 2;
}

int cmd_check_spec(const std::string& path, bool print) {
  esl::EslSpec spec = load_spec(path);
  for (const auto& w : esl::lint_spec(spec)) std::cerr << "warning: " << w << "\n";
  if (print) std::cout << esl::print_spec(spec);
  std::cout << plural(spec.variables.size(), "variable") << ", " << plural(spec.predicates.size(), "predicate")
            << ", " << plural(spec.rules.size(), "rule") << "\n";
  return 0;
}

int cmd_verify_one(const CaseFlags& cf, const AgentFlags& af, bool verbose, bool deterministic) {
  if (cf.spec.empty()) throw UsageError("--spec is required");
  if (cf.level != 1 && cf.level != 2) throw UsageError("--level must be 1 or 2");
  verifier::VerificationCase c;
  c.id = fs::path(cf.context.empty() ? cf.spec : cf.context).stem().string();
  c.spec = load_spec(cf.spec);
  c.context = read_optional(cf.context);
  c.llm_output = read_optional(cf.llm_output);
  c.level = cf.level;

  harness::AgentPair pair = make_factory(af, nullptr)();
  agents::Agent perception(agents::Role::Perception, *pair.perception, pair.perception_prompts);
  agents::Agent target(agents::Role::Target, *pair.target, pair.target_prompts);
  verifier::Trace trace;
  verifier::Verdict v = verifier::verify(c, perception, target, {}, &trace);
  if (verbose) std::cerr << verifier::describe(trace);
  std::cout << verifier::to_json(v, {!deterministic}).dump(2) << "\n";
  return exit_code(v.status);
}

int cmd_run(const std::string& manifest, const AgentFlags& af, unsigned jobs, bool deterministic,
            const std::string& rows_out, const std::string& summary_out) {
  if (!fs::exists(manifest)) throw UsageError("manifest not found: " + manifest);
  harness::Dataset ds = harness::load_dataset(manifest);
  harness::RunOptions opts;
  opts.jobs = jobs ? jobs : configured_jobs(af);
  opts.deterministic = deterministic;
  auto results = harness::run_dataset(ds, make_factory(af, &ds), opts);
  auto rows = harness::rows_of(results);
  if (!rows_out.empty()) {
    std::ofstream out(rows_out, std::ios::trunc);
    if (!out) throw UsageError("cannot write " + rows_out);
    for (const auto& r : rows) out << harness::to_json(r).dump() << "\n";
  }
  harness::MetricsSummary s = harness::compute_metrics(rows);
  std::string summary = harness::to_json(s).dump(2) + "\n";
  if (!summary_out.empty()) {
    std::ofstream out(summary_out, std::ios::trunc);
    if (!out) throw UsageError("cannot write " + summary_out);
    out << summary;
  }
  std::cout << summary;
  std::cerr << ds.name << ": " << s.cases << " cases, Con. " << s.consistent << " / Incon. " << s.inconsistent
            << " / Fail " << s.fail << "; combined TPR " << harness::format_rate(s.tpr_combined) << ", TNR "
            << harness::format_rate(s.tnr_combined) << " (LLM alone " << harness::format_rate(s.tpr_llm) << ", "
            << harness::format_rate(s.tnr_llm) << ")\n";
  return 0;
}

int cmd_summarize(const std::string& rows_path) {
  std::istringstream in(read_optional(rows_path));
  std::vector<harness::CaseRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(harness::row_from_json(nlohmann::json::parse(line)));
  }
  std::cout << harness::to_json(harness::compute_metrics(rows)).dump(2) << "\n";
  return 0;
}

void add_agent_flags(CLI::App* cmd, AgentFlags& af, bool fixtures = true) {
  if (fixtures) cmd->add_option("--fixtures", af.fixtures, "Recorded agent fixture JSONL files");
  cmd->add_option("--script", af.script, "Scripted agent replies (JSON)");
  cmd->add_option("--config", af.config, "Agent configuration file");
}

void add_case_flags(CLI::App* cmd, CaseFlags& cf) {
  cmd->add_option("--spec", cf.spec, "ESL specification (JSON)");
  cmd->add_option("--context", cf.context, "Prompt context file");
  cmd->add_option("--output,--llm-output", cf.llm_output, "LLM output file");
  cmd->add_option("--level", cf.level, "Interpretation level (1 or 2)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runtime verification of LLM outputs against ESL specifications"};
  app.require_subcommand(1);

  std::string spec_path;
  bool print = false;
  auto* check = app.add_subcommand("check-spec", "Parse and validate a spec");
  check->add_option("spec", spec_path, "Spec file")->required();
  check->add_flag("--print", print, "Print the normalized spec");

  CaseFlags cf;
  AgentFlags af;
  bool verbose = false;
  bool deterministic = false;
  auto* verify = app.add_subcommand("verify", "Verify one LLM output");
  add_case_flags(verify, cf);
  add_agent_flags(verify, af);
  verify->add_flag("-v,--verbose", verbose, "Pipeline trace on stderr");
  verify->add_flag("--deterministic", deterministic, "Zero timings in the report");

  std::string manifest, rows_out, summary_out;
  unsigned jobs = 0;
  auto* run = app.add_subcommand("run", "Verify a dataset and compute metrics");
  run->add_option("manifest", manifest, "Dataset manifest")->required();
  add_agent_flags(run, af);
  run->add_option("-j,--jobs", jobs, "Parallel cases (default from config, else 1)");
  run->add_option("--rows", rows_out, "Per-case JSONL output");
  run->add_option("--summary", summary_out, "Summary JSON output");
  run->add_flag("--deterministic", deterministic, "Zero wall times");

  auto* record = app.add_subcommand("record", "Run live or scripted agents and capture fixtures");
  record->add_option("manifest", manifest, "Dataset manifest (omit for a single case)");
  add_case_flags(record, cf);
  add_agent_flags(record, af, false);
  record->add_option("--into", af.record_into, "Fixture JSONL to write")->required();
  record->add_option("--rows", rows_out, "Per-case JSONL output");
  record->add_flag("--deterministic", deterministic, "Zero timings");

  auto* replay = app.add_subcommand("replay", "Re-run from recorded fixtures only");
  replay->add_option("manifest", manifest, "Dataset manifest (omit for a single case)");
  add_case_flags(replay, cf);
  replay->add_option("--fixtures", af.fixtures, "Recorded agent fixture JSONL files");
  replay->add_option("--rows", rows_out, "Per-case JSONL output");
  replay->add_option("--summary", summary_out, "Summary JSON output");
  replay->add_flag("-v,--verbose", verbose, "Pipeline trace on stderr");
  replay->add_flag("--deterministic", deterministic, "Zero timings");

  std::string rows_in;
  auto* summarize = app.add_subcommand("summarize", "Recompute the summary from per-case JSONL");
  summarize->add_option("rows", rows_in, "Per-case JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return cmd_check_spec(spec_path, print);
    if (*verify) return cmd_verify_one(cf, af, verbose, deterministic);
    if (*run) return cmd_run(manifest, af, jobs, deterministic, rows_out, summary_out);
    if (*record || *replay) {
      af.require_fixtures = static_cast<bool>(*replay);
      if (!manifest.empty()) return cmd_run(manifest, af, jobs, deterministic, rows_out, summary_out);
      return cmd_verify_one(cf, af, verbose, deterministic);
    }
    if (*summarize) return cmd_summarize(rows_in);
  } catch (const esl::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const harness::DatasetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
