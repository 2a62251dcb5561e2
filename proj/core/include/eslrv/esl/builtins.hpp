#pragma once

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eslrv/esl/ast.hpp"

namespace eslrv::esl {

class EvalError : public std::runtime_error {
 public:
  enum class Kind { UnboundVariable, NonNumericArg, DivisionByZero, UnknownFunction, Arity };

  EvalError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Built-in functions usable inside terms. The default registry ships the
/// four infix operators plus `Square` and `Abs`; `-` is both unary and
/// binary. Callers may extend a copy of the default registry.
class FunctionRegistry {
 public:
  using Fn = std::function<Number(std::span<const Number>)>;

  struct Entry {
    std::string name;
    std::size_t min_arity;
    std::size_t max_arity;
    Fn fn;
  };

  static const FunctionRegistry& builtin();

  void add(Entry entry);
  const Entry* find(std::string_view name) const;
  bool accepts_arity(std::string_view name, std::size_t arity) const;

 private:
  std::vector<Entry> entries_;
};

/// Folds a ground term to a constant with exact arithmetic. String
/// constants pass through unchanged.
Constant eval_term(const Term& term, const FunctionRegistry& registry = FunctionRegistry::builtin());

/// Replaces every variable bound in `values`; unbound variables stay.
Term substitute(const Term& term, const std::map<std::string, Constant>& values);
Atom substitute(const Atom& atom, const std::map<std::string, Constant>& values);

}  // namespace eslrv::esl
