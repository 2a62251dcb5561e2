#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "eslrv/agents/agent.hpp"
#include "eslrv/esl/ast.hpp"
#include "eslrv/interp/interpret.hpp"
#include "eslrv/logic/forward_chain.hpp"

namespace eslrv::verifier {

enum class Status { Consistent, Inconsistent, Fail };
enum class Stage { Internal, FollowUp };
enum class Label { Safe, Unsafe, Correct, Incorrect };

std::string_view to_string(Status s);
std::string_view to_string(Stage s);
std::string_view to_string(Label l);
std::optional<Status> parse_status(std::string_view text);
std::optional<Label> parse_label(std::string_view text);
/// Unsafe and Incorrect are the positive (violation) labels.
bool is_positive(Label l);

struct VerificationCase {
  std::string id;
  esl::EslSpec spec;
  std::string context;
  std::string llm_output;
  int level = 2;
  std::optional<Label> label;
};

struct Evidence {
  /// Internal: positive literal of the clashing proposition. FollowUp: the
  /// derived literal the target contradicted.
  std::string conflict;
  std::vector<std::string> chain;
  std::optional<std::string> question;
  std::optional<logic::Truth> answer;
};

struct Timings {
  double interpret_ms = 0;
  double chain_ms = 0;
  double followup_ms = 0;
};

struct Verdict {
  Status status = Status::Consistent;
  std::optional<Stage> stage;
  std::optional<Evidence> evidence;
  /// Set for Fail.
  std::string reason;
  std::vector<std::string> diagnostics;
  Timings timings;
};

enum class FollowUpResult { Consistent, Inconsistent, Inconclusive };

std::string_view to_string(FollowUpResult r);

struct FollowUp {
  logic::GroundLiteral literal;
  std::string question;
  logic::Truth answer = logic::Truth::Unknown;
  FollowUpResult result = FollowUpResult::Inconclusive;
};

/// Intermediate products of one verify run, for tracing and tests.
struct Trace {
  agents::Perception perception;
  std::optional<interp::InterpretationResult> interpretation;
  std::vector<logic::GroundImplication> implications;
  std::optional<logic::FCOutcome> chaining;
  std::vector<FollowUp> followups;
};

class UnrenderableLiteral : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Yes/no question for a ground atom from its predicate description. When
/// the description contains " is ", the verb moves to the front; otherwise
/// the question reads "Is it true that <description>?".
std::string render_query(const interp::GroundAtom& atom, const esl::EslSpec& spec);

/// Polarity-aware comparison of a derived literal with the target's answer.
FollowUpResult check_followup(const logic::GroundLiteral& derived, logic::Truth answer);

struct VerifyOptions {
  std::size_t max_bindings = 10000;
};

/// Perception, interpretation at `c.level`, rule-like normalization, forward
/// chaining, then one follow-up question per newly derived literal whose
/// proposition had no perceived value, stopping at the first contradiction.
/// Agent, interpretation and rendering failures yield Fail.
Verdict verify(const VerificationCase& c, agents::Agent& perception, agents::Agent& target,
               const VerifyOptions& options = {}, Trace* trace = nullptr);

struct ReportOptions {
  /// Off for byte-comparable reports.
  bool include_timings = true;
};

nlohmann::ordered_json to_json(const Verdict& v, const ReportOptions& options = {});

/// Human-readable pipeline trace for --verbose.
std::string describe(const Trace& trace);

}  // namespace eslrv::verifier
