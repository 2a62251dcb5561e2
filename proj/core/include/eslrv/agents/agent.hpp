#pragma once

#include <functional>
#include <utility>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eslrv/agents/backends.hpp"
#include "eslrv/agents/parse.hpp"
#include "eslrv/agents/prompts.hpp"
#include "eslrv/esl/ast.hpp"
#include "eslrv/interp/interpret.hpp"

namespace eslrv::agents {

struct Perception {
  std::vector<interp::DomainObject> objects;
  std::vector<interp::PerceivedFact> facts;
};

/// Predicate declarations, one per line; rules too when `with_rules`.
std::string spec_excerpt(const esl::EslSpec& spec, bool with_rules = false);

/// One agent role bound to a backend. Every reply is schema-checked; a reply
/// that fails is re-prompted once with the repair instruction, then raised
/// as AgentError(Malformed). Transport failures raise AgentError(Unavailable).
class Agent : public interp::WitnessSource {
 public:
  Agent(Role role, ChatBackend& backend, PromptSet prompts = PromptSet::builtin());

  /// Objects as o1..oN in reply order (duplicates by value dropped), then
  /// one Propositionalize round over them. Facts naming undeclared
  /// predicates, wrong arities or unlisted objects are dropped with a note.
  Perception extract_facts(const esl::EslSpec& spec, const interp::DomainOfDiscourse& d);

  std::optional<std::map<std::string, std::string>> instantiate(const interp::Binding& partial,
                                                                std::span<const esl::Atom> constraints,
                                                                const interp::DomainOfDiscourse& d) override;

  logic::Truth answer_query(const std::string& question);

  /// Direct "does this scenario break the rules" verdict of the target.
  bool judge_violation(const esl::EslSpec& spec, const interp::DomainOfDiscourse& d);

  /// Spec used for Instantiate excerpts; set by extract_facts.
  void use_spec(const esl::EslSpec& spec) { excerpt_ = spec_excerpt(spec); }

  const std::vector<std::string>& notes() const { return notes_; }
  std::vector<std::string> take_notes() { return std::exchange(notes_, {}); }

 private:
  template <typename T>
  T ask(AgentRequest request, const std::function<T(const std::string&)>& parse);

  Role role_;
  ChatBackend& backend_;
  PromptSet prompts_;
  std::string excerpt_;
  std::vector<std::string> notes_;
};

}  // namespace eslrv::agents
