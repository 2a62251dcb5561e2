#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "eslrv/number.hpp"

namespace eslrv::esl {

/// A constant term: an exact number or a quoted string.
class Constant {
 public:
  Constant() = default;
  explicit Constant(Number n) : value_(std::move(n)) {}
  explicit Constant(std::string s) : value_(std::move(s)) {}

  /// Numbers when the text parses as a decimal literal, strings otherwise.
  /// This is how discourse objects and agent-reported arguments become terms.
  static Constant from_text(std::string_view text);

  bool is_number() const { return std::holds_alternative<Number>(value_); }
  const Number& number() const { return std::get<Number>(value_); }
  const std::string& text() const { return std::get<std::string>(value_); }

  /// Rendering used inside proposition ids and natural-language text.
  /// Strings are bare unless they could be confused with a number or with
  /// the argument syntax, in which case they are single-quoted.
  std::string canonical() const;

  /// Rendering used when printing rule source (strings always quoted).
  std::string source() const;

  friend bool operator==(const Constant&, const Constant&) = default;

 private:
  std::variant<Number, std::string> value_;
};

struct Term;

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct FuncApp {
  std::string name;
  std::vector<Term> args;
  friend bool operator==(const FuncApp&, const FuncApp&);
};

struct Term {
  std::variant<Variable, Constant, FuncApp> node;

  static Term var(std::string name) { return Term{Variable{std::move(name)}}; }
  static Term constant(Constant c) { return Term{std::move(c)}; }
  static Term number(long long v) { return Term{Constant(Number(v))}; }
  static Term apply(std::string name, std::vector<Term> args) {
    return Term{FuncApp{std::move(name), std::move(args)}};
  }

  bool is_variable() const { return std::holds_alternative<Variable>(node); }
  bool is_constant() const { return std::holds_alternative<Constant>(node); }
  bool is_ground() const;
  /// Appends variable names in first-occurrence order, without duplicates.
  void collect_variables(std::vector<std::string>& out) const;

  friend bool operator==(const Term&, const Term&) = default;
};

inline bool operator==(const FuncApp& a, const FuncApp& b) { return a.name == b.name && a.args == b.args; }

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  void collect_variables(std::vector<std::string>& out) const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct PredLiteral {
  Atom atom;
  bool negated = false;
  friend bool operator==(const PredLiteral&, const PredLiteral&) = default;
};

using Conjunction = std::vector<PredLiteral>;
using Disjunction = std::vector<PredLiteral>;

/// An ESL rule in deductive normal form: `lhs` is a DNF (disjunction of
/// conjunctions), `rhs` a CNF (conjunction of disjunctions).
struct EslRule {
  std::vector<Conjunction> lhs;
  std::vector<Disjunction> rhs;

  /// Distinct atoms of the left-hand side in order of appearance.
  std::vector<Atom> lhs_atoms() const;
  /// Variables of the whole rule in order of appearance.
  std::vector<std::string> variables() const;
  friend bool operator==(const EslRule&, const EslRule&) = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<std::string> params;
  std::string description;

  std::size_t arity() const { return params.size(); }
  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

struct EslSpec {
  std::vector<std::string> variables;  // sorted, unique
  std::vector<PredicateDecl> predicates;
  std::vector<EslRule> rules;

  const PredicateDecl* find_predicate(std::string_view name) const;
  bool has_variable(std::string_view name) const;
  friend bool operator==(const EslSpec&, const EslSpec&) = default;
};

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const PredLiteral& literal);
std::string to_string(const EslRule& rule);
/// `Name(p1, p2) := description`
std::string to_string(const PredicateDecl& decl);

}  // namespace eslrv::esl
