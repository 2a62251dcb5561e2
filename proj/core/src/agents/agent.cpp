#include "eslrv/agents/agent.hpp"

#include <algorithm>

namespace eslrv::agents {

std::string spec_excerpt(const esl::EslSpec& spec, bool with_rules) {
  std::string out;
  for (const auto& p : spec.predicates) out += esl::to_string(p) + "\n";
  if (with_rules) {
    for (const auto& r : spec.rules) out += "Rule: " + esl::to_string(r) + "\n";
  }
  return out;
}

Agent::Agent(Role role, ChatBackend& backend, PromptSet prompts)
    : role_(role), backend_(backend), prompts_(std::move(prompts)) {}

template <typename T>
T Agent::ask(AgentRequest request, const std::function<T(const std::string&)>& parse) {
  request.role = role_;
  std::vector<ChatMessage> messages = prompts_.render(request);
  std::string label = std::string(to_string(request.kind)) + " (" + std::string(to_string(role_)) + ")";
  for (int attempt = 0;; ++attempt) {
    request.repair_attempt = attempt;
    ChatReply reply;
    try {
      reply = backend_.complete(request, messages);
    } catch (const AgentError&) {
      throw;
    } catch (const std::exception& e) {
      throw AgentError(AgentError::Kind::Unavailable, label + ": " + e.what());
    }
    if (reply.retries > 0) notes_.push_back(label + ": " + std::to_string(reply.retries) + " transport retries");
    try {
      return parse(reply.text);
    } catch (const ParseFailure& e) {
      if (attempt >= 1) {
        throw AgentError(AgentError::Kind::Malformed, label + ": " + e.what() + " (after repair re-prompt)");
      }
      notes_.push_back(label + ": repair re-prompt after " + e.what());
      std::string repair = prompts_.repair();
      auto pos = repair.find("{{error}}");
      if (pos != std::string::npos) repair.replace(pos, 9, e.what());
      messages.push_back(ChatMessage{"assistant", reply.text});
      messages.push_back(ChatMessage{"user", repair});
    }
  }
}

Perception Agent::extract_facts(const esl::EslSpec& spec, const interp::DomainOfDiscourse& d) {
  use_spec(spec);
  AgentRequest base;
  base.spec_excerpt = excerpt_;
  base.context = d.context;
  base.llm_output = d.llm_output;

  AgentRequest objects_req = base;
  objects_req.kind = RequestKind::ExtractObjects;
  std::vector<std::string> texts =
      ask<std::vector<std::string>>(objects_req, [](const std::string& r) { return parse_objects_reply(r); });

  Perception out;
  for (const auto& t : texts) {
    esl::Constant v = esl::Constant::from_text(t);
    bool dup = std::any_of(out.objects.begin(), out.objects.end(),
                           [&](const interp::DomainObject& o) { return o.value() == v; });
    if (!dup) out.objects.push_back(interp::DomainObject{"o" + std::to_string(out.objects.size() + 1), t, false});
  }
  if (out.objects.empty()) return out;

  AgentRequest facts_req = base;
  facts_req.kind = RequestKind::Propositionalize;
  facts_req.payload["objects"] = nlohmann::ordered_json::array();
  for (const auto& o : out.objects) facts_req.payload["objects"].push_back(o.text);
  std::vector<RawFact> raw =
      ask<std::vector<RawFact>>(facts_req, [](const std::string& r) { return parse_facts_reply(r); });

  std::map<logic::PropositionId, logic::Truth> seen;
  for (const auto& f : raw) {
    const esl::PredicateDecl* decl = spec.find_predicate(f.predicate);
    if (!decl) {
      notes_.push_back("dropped fact on undeclared predicate " + f.predicate);
      continue;
    }
    if (decl->params.size() != f.args.size()) {
      notes_.push_back("dropped fact " + f.predicate + " with " + std::to_string(f.args.size()) + " arguments");
      continue;
    }
    interp::GroundAtom atom{f.predicate, {}};
    bool known = true;
    for (const auto& a : f.args) {
      esl::Constant v = esl::Constant::from_text(a);
      known = known && std::any_of(out.objects.begin(), out.objects.end(),
                                   [&](const interp::DomainObject& o) { return o.value() == v; });
      atom.args.push_back(std::move(v));
    }
    logic::PropositionId id = atom.id();
    if (!known) {
      notes_.push_back("dropped fact " + id.text() + " naming an unlisted object");
      continue;
    }
    auto [it, inserted] = seen.emplace(id, f.truth);
    if (!inserted) {
      if (it->second != f.truth) notes_.push_back("conflicting duplicate fact " + id.text() + " ignored");
      continue;
    }
    out.facts.push_back(interp::PerceivedFact{std::move(atom), f.truth, interp::FactSource::Agent});
  }
  return out;
}

std::optional<std::map<std::string, std::string>> Agent::instantiate(const interp::Binding& partial,
                                                                     std::span<const esl::Atom> constraints,
                                                                     const interp::DomainOfDiscourse& d) {
  std::vector<std::string> unbound;
  for (const auto& c : constraints) {
    std::vector<std::string> vars;
    c.collect_variables(vars);
    for (const auto& v : vars) {
      if (std::find(unbound.begin(), unbound.end(), v) == unbound.end()) unbound.push_back(v);
    }
  }
  if (unbound.empty()) return std::map<std::string, std::string>{};
  std::sort(unbound.begin(), unbound.end());

  AgentRequest req;
  req.kind = RequestKind::Instantiate;
  req.spec_excerpt = excerpt_;
  req.context = d.context;
  req.llm_output = d.llm_output;
  nlohmann::ordered_json binding = nlohmann::ordered_json::object();
  for (const auto& [var, id] : partial.assignment) {
    const interp::DomainObject* o = d.find(id);
    binding[var] = o ? o->text : id;
  }
  req.payload["binding"] = binding;
  req.payload["constraints"] = nlohmann::ordered_json::array();
  for (const auto& c : constraints) req.payload["constraints"].push_back(esl::to_string(c));
  req.payload["unbound"] = unbound;

  using Witness = std::optional<std::map<std::string, std::string>>;
  return ask<Witness>(req, [&](const std::string& r) -> Witness {
    Witness w = parse_witness_reply(r);
    if (!w) return w;
    for (const auto& v : unbound) {
      if (!w->count(v)) throw ParseFailure("witness lacks variable " + v);
    }
    for (const auto& [var, value] : *w) {
      if (std::find(unbound.begin(), unbound.end(), var) == unbound.end()) {
        throw ParseFailure("witness binds " + var + ", which is not unbound");
      }
    }
    return w;
  });
}

logic::Truth Agent::answer_query(const std::string& question) {
  if (question.empty()) throw std::invalid_argument("empty follow-up question");
  AgentRequest req;
  req.kind = RequestKind::AnswerQuery;
  req.payload["question"] = question;
  return ask<logic::Truth>(req, [](const std::string& r) { return parse_answer_reply(r); });
}

bool Agent::judge_violation(const esl::EslSpec& spec, const interp::DomainOfDiscourse& d) {
  AgentRequest req;
  req.kind = RequestKind::JudgeViolation;
  req.spec_excerpt = spec_excerpt(spec, true);
  req.context = d.context;
  req.llm_output = d.llm_output;
  return ask<bool>(req, [](const std::string& r) { return parse_judgement_reply(r); });
}

}  // namespace eslrv::agents
