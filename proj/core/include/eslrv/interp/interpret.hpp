#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eslrv/esl/ast.hpp"
#include "eslrv/interp/bindings.hpp"
#include "eslrv/interp/domain.hpp"
#include "eslrv/logic/ground.hpp"

namespace eslrv::interp {

/// Proposes witnesses for the unbound variables of a partial binding such
/// that every constraint atom holds. Values are object texts (existing or
/// new). Returns nullopt when no witness exists; throws on transport or
/// format failures.
class WitnessSource {
 public:
  virtual ~WitnessSource() = default;
  virtual std::optional<std::map<std::string, std::string>> instantiate(const Binding& partial,
                                                                        std::span<const esl::Atom> constraints,
                                                                        const DomainOfDiscourse& discourse) = 0;
};

class InterpretationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroundRule {
  std::size_t rule_index = 0;
  Binding binding;
  logic::GroundDeNF denf;
};

struct InterpretationResult {
  std::vector<GroundRule> rules;
  logic::Assignments assignments;
  AtomTable atoms;
  std::vector<std::string> diagnostics;
  /// Objects invented during Level-2 instantiation.
  std::vector<DomainObject> synthesized;
  /// Facts added by instantiation (always True).
  std::vector<PerceivedFact> witness_facts;

  std::vector<logic::GroundDeNF> ground_rules() const;
};

struct InterpretOptions {
  std::size_t max_bindings = 10000;
  const esl::FunctionRegistry* registry = &esl::FunctionRegistry::builtin();
};

/// Grounds every rule under its Complete bindings; Partial bindings are
/// only reported in diagnostics. Assignments hold all perceived facts plus
/// Unknown for rule propositions nobody perceived.
InterpretationResult interpret_level1(const esl::EslSpec& spec, const DomainOfDiscourse& discourse,
                                      const std::vector<PerceivedFact>& facts, const InterpretOptions& options = {});

/// Level-1 plus one instantiation per Partial binding through `agent`. The
/// instantiated constraint atoms are seeded True. Refusals are dropped with
/// a diagnostic; agent errors raise InterpretationFailure.
InterpretationResult interpret_level2(const esl::EslSpec& spec, const DomainOfDiscourse& discourse,
                                      const std::vector<PerceivedFact>& facts, WitnessSource& agent,
                                      const InterpretOptions& options = {});

}  // namespace eslrv::interp
