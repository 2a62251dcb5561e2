#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eslrv/esl/ast.hpp"
#include "eslrv/esl/builtins.hpp"

namespace eslrv::esl {

enum class SpecErrorKind { Syntax, Schema, Arity, Undeclared, Duplicate, NotDeNF, Blowup };

std::string_view to_string(SpecErrorKind kind);

/// Where an error occurred. `section` names the JSON element holding the
/// offending text (e.g. `Rules[2]`); it is empty for errors in the JSON
/// document itself. Line and column are 1-based and relative to the
/// section text, or to the file when `section` is empty.
struct SourcePos {
  std::string section;
  std::size_t line = 1;
  std::size_t column = 1;
};

class SpecError : public std::runtime_error {
 public:
  SpecError(SpecErrorKind kind, SourcePos pos, std::string detail);

  SpecErrorKind kind() const { return kind_; }
  const SourcePos& pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  SpecErrorKind kind_;
  SourcePos pos_;
  std::string detail_;
};

/// Unrestricted quantifier-free formula, as written in a rule before the
/// DeNF shape check. `begin`/`end` delimit the source text it came from.
struct Formula {
  enum class Kind { Atom, Not, And, Or };

  Kind kind = Kind::Atom;
  Atom atom;
  std::vector<Formula> children;
  std::size_t begin = 0;
  std::size_t end = 0;

  static Formula make_atom(Atom a) { return Formula{Kind::Atom, std::move(a), {}, 0, 0}; }
  static Formula make_not(Formula f) { return Formula{Kind::Not, {}, {std::move(f)}, 0, 0}; }
  static Formula make_and(std::vector<Formula> fs) { return Formula{Kind::And, {}, std::move(fs), 0, 0}; }
  static Formula make_or(std::vector<Formula> fs) { return Formula{Kind::Or, {}, std::move(fs), 0, 0}; }
};

struct Implication {
  Formula lhs;
  Formula rhs;
};

struct ParseOptions {
  /// Convert non-DeNF rules with normalize_to_denf instead of rejecting them.
  bool normalize = false;
  std::size_t clause_bound = 256;
  const FunctionRegistry* registry = &FunctionRegistry::builtin();
};

/// Parses and validates a JSON specification file. Throws SpecError.
EslSpec parse_spec(std::string_view source, const ParseOptions& options = {});

/// Parses one rule expression against the declarations of `spec` without
/// checking the DeNF shape. Throws SpecError.
Implication parse_implication(std::string_view text, const EslSpec& spec, const ParseOptions& options = {},
                              const std::string& section = "rule");

/// Parses one rule expression and returns it in DeNF (strict or normalized
/// according to `options`). Throws SpecError.
EslRule parse_rule(std::string_view text, const EslSpec& spec, const ParseOptions& options = {},
                   const std::string& section = "rule");

/// Parses `Name(p1, ..., pn) := description`.
PredicateDecl parse_predicate_decl(std::string_view text, const std::string& section = "predicate");

/// Serializes a spec in the file format accepted by parse_spec.
std::string print_spec(const EslSpec& spec);

/// Non-fatal problems, e.g. a parameter that never occurs in its description.
std::vector<std::string> lint_spec(const EslSpec& spec);

}  // namespace eslrv::esl
