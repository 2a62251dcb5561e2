#include "eslrv/verifier/verify.hpp"

#include <array>
#include <chrono>
#include <set>
#include <sstream>

#include "eslrv/esl/render.hpp"
#include "eslrv/logic/rule_like.hpp"

namespace eslrv::verifier {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Consistent: return "Consistent";
    case Status::Inconsistent: return "Inconsistent";
    case Status::Fail: return "Fail";
  }
  return "?";
}

std::string_view to_string(Stage s) { return s == Stage::Internal ? "Internal" : "FollowUp"; }

namespace {

constexpr std::array<std::pair<Label, std::string_view>, 4> kLabels{{
    {Label::Safe, "safe"},
    {Label::Unsafe, "unsafe"},
    {Label::Correct, "correct"},
    {Label::Incorrect, "incorrect"},
}};

}  // namespace

std::string_view to_string(Label l) {
  for (const auto& [k, name] : kLabels) {
    if (k == l) return name;
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view text) {
  for (const auto& [k, name] : kLabels) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::optional<Status> parse_status(std::string_view text) {
  for (Status s : {Status::Consistent, Status::Inconsistent, Status::Fail}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

bool is_positive(Label l) { return l == Label::Unsafe || l == Label::Incorrect; }

std::string_view to_string(FollowUpResult r) {
  switch (r) {
    case FollowUpResult::Consistent: return "Consistent";
    case FollowUpResult::Inconsistent: return "Inconsistent";
    case FollowUpResult::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string render_query(const interp::GroundAtom& atom, const esl::EslSpec& spec) {
  const esl::PredicateDecl* decl = spec.find_predicate(atom.predicate);
  if (!decl || decl->params.size() != atom.args.size()) {
    throw UnrenderableLiteral("no declaration matches " + atom.id().text());
  }
  std::string desc = esl::render_description(*decl, atom.args);
  while (!desc.empty() && (desc.back() == '.' || desc.back() == ' ')) desc.pop_back();
  if (!desc.empty() && desc.back() == '?') return desc;
  if (!decl->params.empty()) {
    auto is = desc.find(" is ");
    if (is != std::string::npos) return "Is " + desc.substr(0, is) + " " + desc.substr(is + 4) + "?";
  }
  return "Is it true that " + desc + "?";
}

FollowUpResult check_followup(const logic::GroundLiteral& derived, logic::Truth answer) {
  if (answer == logic::Truth::Unknown) return FollowUpResult::Inconclusive;
  bool holds = (answer == logic::Truth::True) != derived.negated;
  return holds ? FollowUpResult::Consistent : FollowUpResult::Inconsistent;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

std::vector<std::string> chain_text(const std::vector<logic::GroundImplication>& chain) {
  std::vector<std::string> out;
  for (const auto& r : chain) out.push_back(r.to_string());
  return out;
}

void append(std::vector<std::string>& to, std::vector<std::string> from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

}  // namespace

Verdict verify(const VerificationCase& c, agents::Agent& perception, agents::Agent& target,
               const VerifyOptions& options, Trace* trace) {
  Verdict v;
  Trace local;
  Trace& t = trace ? *trace : local;
  auto fail = [&](std::string reason) {
    v.status = Status::Fail;
    v.reason = std::move(reason);
    return v;
  };

  if (c.level != 1 && c.level != 2) return fail("level must be 1 or 2, got " + std::to_string(c.level));
  if (c.spec.rules.empty()) {
    v.diagnostics.push_back("spec has no rules");
    return v;
  }
  interp::DomainOfDiscourse d{c.context, c.llm_output, {}};
  if (blank(c.context) && blank(c.llm_output)) {
    v.diagnostics.push_back("zero objects: the domain of discourse is empty");
    return v;
  }

  auto start = Clock::now();
  try {
    t.perception = perception.extract_facts(c.spec, d);
    d.objects = t.perception.objects;
    if (d.objects.empty()) v.diagnostics.push_back("zero objects perceived in the domain of discourse");
    interp::InterpretOptions io{options.max_bindings, &esl::FunctionRegistry::builtin()};
    t.interpretation = c.level == 1 ? interp::interpret_level1(c.spec, d, t.perception.facts, io)
                                    : interp::interpret_level2(c.spec, d, t.perception.facts, perception, io);
  } catch (const agents::AgentError& e) {
    append(v.diagnostics, perception.take_notes());
    return fail(std::string(to_string(e.kind())) + ": " + e.what());
  } catch (const interp::InterpretationFailure& e) {
    append(v.diagnostics, perception.take_notes());
    return fail(std::string("InterpretationFailure: ") + e.what());
  } catch (const interp::BindingExplosion& e) {
    return fail(std::string("BindingExplosion: ") + e.what());
  }
  append(v.diagnostics, perception.take_notes());
  append(v.diagnostics, t.interpretation->diagnostics);
  v.timings.interpret_ms = ms_since(start);

  start = Clock::now();
  const auto& ir = *t.interpretation;
  t.implications = logic::to_rule_like(ir.ground_rules());
  logic::FCGraph graph = logic::seed_truth(logic::build_graph(t.implications), ir.assignments);
  t.chaining = logic::forward_chain(graph);
  v.timings.chain_ms = ms_since(start);

  const logic::FCOutcome& out = *t.chaining;
  if (out.status == logic::Consistency::Inconsistent) {
    v.status = Status::Inconsistent;
    v.stage = Stage::Internal;
    Evidence e;
    e.conflict = out.conflict->to_string();
    if (out.trigger) e.chain = chain_text(out.trigger->chain);
    v.evidence = std::move(e);
    return v;
  }

  start = Clock::now();
  std::set<logic::PropositionId> perceived;
  for (const auto& [p, truth] : ir.assignments) {
    if (truth != logic::Truth::Unknown) perceived.insert(p);
  }
  try {
    for (const auto& derivation : out.derived) {
      const logic::GroundLiteral& lit = derivation.literal;
      if (perceived.count(lit.prop)) continue;
      auto atom = ir.atoms.find(lit.prop);
      if (atom == ir.atoms.end()) throw UnrenderableLiteral("no atom recorded for " + lit.prop.text());
      FollowUp f{lit, render_query(atom->second, c.spec)};
      f.answer = target.answer_query(f.question);
      f.result = check_followup(lit, f.answer);
      t.followups.push_back(f);
      if (f.result == FollowUpResult::Inconclusive) {
        v.diagnostics.push_back("follow-up inconclusive: " + f.question);
      } else if (f.result == FollowUpResult::Inconsistent) {
        v.status = Status::Inconsistent;
        v.stage = Stage::FollowUp;
        v.evidence = Evidence{lit.to_string(), chain_text(derivation.chain), f.question, f.answer};
        break;
      }
    }
  } catch (const agents::AgentError& e) {
    append(v.diagnostics, target.take_notes());
    return fail(std::string(to_string(e.kind())) + ": " + e.what());
  } catch (const UnrenderableLiteral& e) {
    return fail(std::string("UnrenderableLiteral: ") + e.what());
  }
  append(v.diagnostics, target.take_notes());
  v.timings.followup_ms = ms_since(start);
  return v;
}

nlohmann::ordered_json to_json(const Verdict& v, const ReportOptions& options) {
  nlohmann::ordered_json j;
  j["status"] = std::string(to_string(v.status));
  j["stage"] = v.stage ? nlohmann::ordered_json(std::string(to_string(*v.stage))) : nlohmann::ordered_json(nullptr);
  if (v.evidence) {
    nlohmann::ordered_json e;
    e["conflict"] = v.evidence->conflict;
    e["chain"] = v.evidence->chain;
    e["question"] = v.evidence->question ? nlohmann::ordered_json(*v.evidence->question) : nlohmann::ordered_json(nullptr);
    e["answer"] = v.evidence->answer ? nlohmann::ordered_json(std::string(logic::to_string(*v.evidence->answer))) : nlohmann::ordered_json(nullptr);
    j["evidence"] = e;
  } else {
    j["evidence"] = nullptr;
  }
  j["reason"] = v.status == Status::Fail ? nlohmann::ordered_json(v.reason) : nlohmann::ordered_json(nullptr);
  j["diagnostics"] = v.diagnostics;
  nlohmann::ordered_json tm;
  tm["interpret_ms"] = options.include_timings ? v.timings.interpret_ms : 0.0;
  tm["chain_ms"] = options.include_timings ? v.timings.chain_ms : 0.0;
  tm["followup_ms"] = options.include_timings ? v.timings.followup_ms : 0.0;
  j["timings"] = tm;
  return j;
}

std::string describe(const Trace& t) {
  std::ostringstream os;
  os << "objects:";
  for (const auto& o : t.perception.objects) os << " " << o.id << "='" << o.text << "'";
  os << "\nperceived facts:\n";
  for (const auto& f : t.perception.facts) os << "  " << f.atom.id().text() << " = " << logic::to_string(f.truth) << "\n";
  if (t.interpretation) {
    const auto& ir = *t.interpretation;
    for (const auto& o : ir.synthesized) os << "synthesized " << o.id << "='" << o.text << "'\n";
    os << "ground rules:\n";
    for (const auto& r : ir.rules) {
      os << "  [" << r.rule_index << "] " << r.binding.to_string() << " " << r.denf.to_string() << "\n";
    }
    os << "seeds:\n";
    for (const auto& [p, truth] : ir.assignments) os << "  " << p.text() << " = " << logic::to_string(truth) << "\n";
  }
  os << "rule-like implications:\n";
  for (const auto& r : t.implications) os << "  " << r.to_string() << "\n";
  if (t.chaining) {
    os << "chaining: " << logic::to_string(t.chaining->status) << "\n";
    for (const auto& dv : t.chaining->derived) os << "  derived " << dv.literal.to_string() << "\n";
    if (t.chaining->conflict) os << "  conflict " << t.chaining->conflict->to_string() << "\n";
  }
  for (const auto& f : t.followups) {
    os << "follow-up: " << f.question << " -> " << logic::to_string(f.answer) << " (" << to_string(f.result) << ")\n";
  }
  return os.str();
}

}  // namespace eslrv::verifier
