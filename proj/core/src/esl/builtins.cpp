#include "eslrv/esl/builtins.hpp"

#include <algorithm>

namespace eslrv::esl {

namespace {

FunctionRegistry make_builtin() {
  FunctionRegistry r;
  r.add({"+", 2, 2, [](std::span<const Number> a) { return a[0] + a[1]; }});
  r.add({"-", 1, 2, [](std::span<const Number> a) { return a.size() == 1 ? -a[0] : a[0] - a[1]; }});
  r.add({"*", 2, 2, [](std::span<const Number> a) { return a[0] * a[1]; }});
  r.add({"/", 2, 2, [](std::span<const Number> a) {
           if (a[1].is_zero()) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
           return a[0] / a[1];
         }});
  r.add({"Square", 1, 1, [](std::span<const Number> a) { return a[0] * a[0]; }});
  r.add({"Abs", 1, 1, [](std::span<const Number> a) { return a[0].is_negative() ? -a[0] : a[0]; }});
  return r;
}

}  // namespace

const FunctionRegistry& FunctionRegistry::builtin() {
  static const FunctionRegistry registry = make_builtin();
  return registry;
}

void FunctionRegistry::add(Entry entry) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.name == entry.name; });
  if (it != entries_.end()) {
    *it = std::move(entry);
  } else {
    entries_.push_back(std::move(entry));
  }
}

const FunctionRegistry::Entry* FunctionRegistry::find(std::string_view name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

bool FunctionRegistry::accepts_arity(std::string_view name, std::size_t arity) const {
  const Entry* e = find(name);
  return e && arity >= e->min_arity && arity <= e->max_arity;
}

Constant eval_term(const Term& term, const FunctionRegistry& registry) {
  if (const auto* v = std::get_if<Variable>(&term.node)) {
    throw EvalError(EvalError::Kind::UnboundVariable, "unbound variable '" + v->name + "'");
  }
  if (const auto* c = std::get_if<Constant>(&term.node)) return *c;

  const auto& app = std::get<FuncApp>(term.node);
  const auto* entry = registry.find(app.name);
  if (!entry) throw EvalError(EvalError::Kind::UnknownFunction, "unknown function '" + app.name + "'");
  if (app.args.size() < entry->min_arity || app.args.size() > entry->max_arity) {
    throw EvalError(EvalError::Kind::Arity, "wrong number of arguments for '" + app.name + "'");
  }
  std::vector<Number> args;
  args.reserve(app.args.size());
  for (const auto& arg : app.args) {
    Constant value = eval_term(arg, registry);
    if (!value.is_number()) {
      throw EvalError(EvalError::Kind::NonNumericArg,
                      "non-numeric argument " + value.canonical() + " to '" + app.name + "'");
    }
    args.push_back(value.number());
  }
  return Constant(entry->fn(args));
}

Term substitute(const Term& term, const std::map<std::string, Constant>& values) {
  if (const auto* v = std::get_if<Variable>(&term.node)) {
    auto it = values.find(v->name);
    return it == values.end() ? term : Term::constant(it->second);
  }
  if (term.is_constant()) return term;
  const auto& app = std::get<FuncApp>(term.node);
  std::vector<Term> args;
  args.reserve(app.args.size());
  for (const auto& arg : app.args) args.push_back(substitute(arg, values));
  return Term::apply(app.name, std::move(args));
}

Atom substitute(const Atom& atom, const std::map<std::string, Constant>& values) {
  Atom out{atom.predicate, {}};
  out.args.reserve(atom.args.size());
  for (const auto& arg : atom.args) out.args.push_back(substitute(arg, values));
  return out;
}

}  // namespace eslrv::esl
