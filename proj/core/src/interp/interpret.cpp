#include "eslrv/interp/interpret.hpp"

#include <algorithm>
#include <set>

namespace eslrv::interp {

std::vector<logic::GroundDeNF> InterpretationResult::ground_rules() const {
  std::vector<logic::GroundDeNF> out;
  out.reserve(rules.size());
  for (const auto& r : rules) out.push_back(r.denf);
  return out;
}

namespace {

std::string rule_label(std::size_t index) { return "Rules[" + std::to_string(index) + "]"; }

class Interpreter {
 public:
  Interpreter(const esl::EslSpec& spec, const DomainOfDiscourse& discourse, const std::vector<PerceivedFact>& facts,
              const InterpretOptions& options)
      : spec_(spec), discourse_(discourse), facts_(facts), options_(options), objects_(discourse.objects) {
    for (const auto& f : facts_) {
      add_assignment(f.atom, f.truth);
    }
  }

  InterpretationResult run(WitnessSource* agent) {
    for (std::size_t i = 0; i < spec_.rules.size(); ++i) {
      const auto& rule = spec_.rules[i];
      BindingOptions bopts{options_.max_bindings, options_.registry};
      std::vector<Binding> bindings = enumerate_bindings(rule, discourse_.objects, facts_, bopts);
      if (bindings.empty()) {
        note(rule_label(i) + ": no binding grounds any left-hand predicate");
      }
      for (const auto& b : bindings) {
        if (b.kind == BindingKind::Complete) {
          emit(i, b);
        } else if (!agent) {
          note(rule_label(i) + ": partial binding " + b.to_string() + " skipped at level 1");
        } else {
          extend(i, b, *agent);
        }
      }
    }
    for (const auto& gr : result_.rules) {
      for (const auto* side : {&gr.denf.lhs, &gr.denf.rhs}) {
        for (const auto& group : *side) {
          for (const auto& lit : group) {
            if (!assigned_.count(lit.prop)) {
              assigned_.insert(lit.prop);
              result_.assignments.emplace_back(lit.prop, logic::Truth::Unknown);
            }
          }
        }
      }
    }
    return std::move(result_);
  }

 private:
  void note(std::string message) { result_.diagnostics.push_back(std::move(message)); }

  void add_assignment(const GroundAtom& atom, logic::Truth truth) {
    logic::PropositionId id = atom.id();
    result_.atoms.emplace(id, atom);
    logic::Assignment entry{id, truth};
    if (std::find(result_.assignments.begin(), result_.assignments.end(), entry) == result_.assignments.end()) {
      result_.assignments.push_back(std::move(entry));
    }
    assigned_.insert(id);
  }

  std::map<std::string, esl::Constant> values_of(const Binding& b) const {
    std::map<std::string, esl::Constant> values;
    for (const auto& [var, obj] : b.assignment) {
      auto it = std::find_if(objects_.begin(), objects_.end(), [&](const DomainObject& o) { return o.id == obj; });
      values.emplace(var, it->value());
    }
    return values;
  }

  std::optional<logic::GroundLiteral> ground(const esl::PredLiteral& lit,
                                             const std::map<std::string, esl::Constant>& values,
                                             std::string& error) {
    esl::Atom bound = esl::substitute(lit.atom, values);
    try {
      GroundAtom atom = ground_atom(bound, *options_.registry);
      logic::PropositionId id = atom.id();
      result_.atoms.emplace(id, std::move(atom));
      return logic::GroundLiteral{id, lit.negated};
    } catch (const esl::EvalError& e) {
      error = std::string(e.what()) + " in '" + esl::to_string(bound) + "'";
      return std::nullopt;
    }
  }

  void emit(std::size_t index, const Binding& b) {
    auto values = values_of(b);
    logic::GroundDeNF denf;
    std::string error;
    const auto& rule = spec_.rules[index];
    auto ground_side = [&](const std::vector<std::vector<esl::PredLiteral>>& side,
                           std::vector<std::vector<logic::GroundLiteral>>& out) {
      for (const auto& group : side) {
        std::vector<logic::GroundLiteral> g;
        for (const auto& lit : group) {
          auto gl = ground(lit, values, error);
          if (!gl) return false;
          g.push_back(std::move(*gl));
        }
        out.push_back(std::move(g));
      }
      return true;
    };
    if (!ground_side(rule.lhs, denf.lhs) || !ground_side(rule.rhs, denf.rhs)) {
      note(rule_label(index) + ": binding " + b.to_string() + " not grounded: " + error);
      return;
    }
    bool duplicate = std::any_of(result_.rules.begin(), result_.rules.end(),
                                 [&](const GroundRule& r) { return r.denf == denf; });
    if (!duplicate) result_.rules.push_back(GroundRule{index, b, std::move(denf)});
  }

  std::string object_for(const std::string& text) {
    esl::Constant value = esl::Constant::from_text(text);
    for (const auto& o : objects_) {
      if (o.value() == value) return o.id;
    }
    DomainObject created{"o" + std::to_string(objects_.size() + 1), text, true};
    objects_.push_back(created);
    result_.synthesized.push_back(created);
    note("synthesized object " + created.id + "='" + text + "'");
    return created.id;
  }

  void extend(std::size_t index, const Binding& partial, WitnessSource& agent) {
    const auto& rule = spec_.rules[index];
    std::vector<std::string> unbound;
    for (const auto& atom : rule.lhs_atoms()) {
      std::vector<std::string> vars;
      atom.collect_variables(vars);
      for (const auto& v : vars) {
        if (!partial.assignment.count(v) && std::find(unbound.begin(), unbound.end(), v) == unbound.end()) {
          unbound.push_back(v);
        }
      }
    }
    if (unbound.empty()) {
      emit(index, Binding{partial.assignment, BindingKind::Complete});
      return;
    }

    auto values = values_of(partial);
    std::vector<esl::Atom> constraints;
    std::vector<esl::Atom> originals;
    for (const auto& atom : rule.lhs_atoms()) {
      esl::Atom bound = esl::substitute(atom, values);
      if (!bound.is_ground()) {
        constraints.push_back(bound);
        originals.push_back(atom);
      }
    }

    std::optional<std::map<std::string, std::string>> witness;
    try {
      witness = agent.instantiate(partial, constraints, discourse_);
    } catch (const std::exception& e) {
      throw InterpretationFailure(rule_label(index) + ": instantiation of " + partial.to_string() +
                                  " failed: " + e.what());
    }
    if (!witness) {
      note(rule_label(index) + ": InstantiationRefused for " + partial.to_string());
      return;
    }
    Binding full{partial.assignment, BindingKind::Complete};
    for (const auto& v : unbound) {
      auto it = witness->find(v);
      if (it == witness->end() || it->second.empty()) {
        note(rule_label(index) + ": InstantiationRefused for " + partial.to_string() + " (no value for " + v + ")");
        return;
      }
      full.assignment[v] = object_for(it->second);
    }

    auto full_values = values_of(full);
    for (std::size_t k = 0; k < constraints.size(); ++k) {
      esl::Atom bound = esl::substitute(constraints[k], full_values);
      try {
        GroundAtom atom = ground_atom(bound, *options_.registry);
        bool folded = std::any_of(originals[k].args.begin(), originals[k].args.end(),
                                  [](const esl::Term& t) { return std::holds_alternative<esl::FuncApp>(t.node); });
        PerceivedFact fact{atom, logic::Truth::True, folded ? FactSource::BuiltinFold : FactSource::Agent};
        add_assignment(atom, logic::Truth::True);
        bool seen = std::any_of(result_.witness_facts.begin(), result_.witness_facts.end(),
                                [&](const PerceivedFact& f) { return f.atom == fact.atom; });
        if (!seen) result_.witness_facts.push_back(std::move(fact));
      } catch (const esl::EvalError& e) {
        note(rule_label(index) + ": witness for " + partial.to_string() + " not usable: " + e.what());
        return;
      }
    }
    note(rule_label(index) + ": instantiated " + partial.to_string() + " as " + full.to_string());
    emit(index, full);
  }

  const esl::EslSpec& spec_;
  const DomainOfDiscourse& discourse_;
  const std::vector<PerceivedFact>& facts_;
  const InterpretOptions& options_;
  std::vector<DomainObject> objects_;
  std::set<logic::PropositionId> assigned_;
  InterpretationResult result_;
};

}  // namespace

InterpretationResult interpret_level1(const esl::EslSpec& spec, const DomainOfDiscourse& discourse,
                                      const std::vector<PerceivedFact>& facts, const InterpretOptions& options) {
  return Interpreter(spec, discourse, facts, options).run(nullptr);
}

InterpretationResult interpret_level2(const esl::EslSpec& spec, const DomainOfDiscourse& discourse,
                                      const std::vector<PerceivedFact>& facts, WitnessSource& agent,
                                      const InterpretOptions& options) {
  return Interpreter(spec, discourse, facts, options).run(&agent);
}

}  // namespace eslrv::interp
