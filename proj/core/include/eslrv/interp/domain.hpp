#pragma once

#include <map>
#include <string>
#include <vector>

#include "eslrv/esl/ast.hpp"
#include "eslrv/esl/builtins.hpp"
#include "eslrv/logic/ground.hpp"

namespace eslrv::interp {

using esl::eval_term;

/// An entity of the domain of discourse. `text` is how it is written in the
/// discourse; numeric texts become numeric constants when substituted.
struct DomainObject {
  std::string id;
  std::string text;
  /// Invented by the perception agent during Level-2 instantiation rather
  /// than found in the discourse.
  bool synthesized = false;

  esl::Constant value() const { return esl::Constant::from_text(text); }
  friend bool operator==(const DomainObject&, const DomainObject&) = default;
};

/// Prompt context plus LLM output, and the objects perceived in them.
struct DomainOfDiscourse {
  std::string context;
  std::string llm_output;
  std::vector<DomainObject> objects;

  const DomainObject* find(const std::string& id) const;
};

/// Predicate applied to folded constants.
struct GroundAtom {
  std::string predicate;
  std::vector<esl::Constant> args;

  logic::PropositionId id() const;
  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
};

/// Folds every argument of a variable-free atom. Throws esl::EvalError.
GroundAtom ground_atom(const esl::Atom& atom, const esl::FunctionRegistry& registry = esl::FunctionRegistry::builtin());

enum class FactSource { Agent, BuiltinFold };

struct PerceivedFact {
  GroundAtom atom;
  logic::Truth truth = logic::Truth::Unknown;
  FactSource source = FactSource::Agent;
};

/// Proposition id -> the atom it names, for rendering queries later.
using AtomTable = std::map<logic::PropositionId, GroundAtom>;

/// Proposition id -> first perceived truth value.
using FactTable = std::map<logic::PropositionId, logic::Truth>;

FactTable make_fact_table(const std::vector<PerceivedFact>& facts);

}  // namespace eslrv::interp
