#include "eslrv/esl/ast.hpp"

#include <algorithm>
#include <cctype>

namespace eslrv::esl {

namespace {

bool is_infix(const std::string& name) {
  return name == "+" || name == "-" || name == "*" || name == "/";
}

bool needs_quotes(const std::string& s) {
  if (s.empty()) return true;
  if (std::isspace(static_cast<unsigned char>(s.front())) || std::isspace(static_cast<unsigned char>(s.back()))) {
    return true;
  }
  if (Number::parse(s)) return true;
  return s.find_first_of("(),'\"\\") != std::string::npos;
}

void push_unique(std::vector<std::string>& out, const std::string& name) {
  if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

std::string print_term(const Term& term, bool nested) {
  if (const auto* v = std::get_if<Variable>(&term.node)) return v->name;
  if (const auto* c = std::get_if<Constant>(&term.node)) return c->source();
  const auto& app = std::get<FuncApp>(term.node);
  if (is_infix(app.name) && app.args.size() == 2) {
    std::string s = print_term(app.args[0], true) + " " + app.name + " " + print_term(app.args[1], true);
    return nested ? "(" + s + ")" : s;
  }
  if (app.name == "-" && app.args.size() == 1) return "-" + print_term(app.args[0], true);
  std::string s = app.name + "(";
  for (std::size_t i = 0; i < app.args.size(); ++i) {
    if (i) s += ", ";
    s += print_term(app.args[i], false);
  }
  return s + ")";
}

}  // namespace

Constant Constant::from_text(std::string_view text) {
  if (auto n = Number::parse(text)) return Constant(std::move(*n));
  return Constant(std::string(text));
}

std::string Constant::canonical() const {
  if (is_number()) return number().to_string();
  const std::string& s = text();
  if (!needs_quotes(s)) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "'";
}

std::string Constant::source() const {
  if (is_number()) return number().to_string();
  const std::string& s = text();
  char quote = s.find('\'') == std::string::npos ? '\'' : '"';
  return quote + s + quote;
}

bool Term::is_ground() const {
  if (is_variable()) return false;
  if (is_constant()) return true;
  const auto& app = std::get<FuncApp>(node);
  return std::all_of(app.args.begin(), app.args.end(), [](const Term& t) { return t.is_ground(); });
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (const auto* v = std::get_if<Variable>(&node)) {
    push_unique(out, v->name);
  } else if (const auto* app = std::get_if<FuncApp>(&node)) {
    for (const auto& arg : app->args) arg.collect_variables(out);
  }
}

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

void Atom::collect_variables(std::vector<std::string>& out) const {
  for (const auto& arg : args) arg.collect_variables(out);
}

std::vector<Atom> EslRule::lhs_atoms() const {
  std::vector<Atom> atoms;
  for (const auto& conj : lhs) {
    for (const auto& lit : conj) {
      if (std::find(atoms.begin(), atoms.end(), lit.atom) == atoms.end()) atoms.push_back(lit.atom);
    }
  }
  return atoms;
}

std::vector<std::string> EslRule::variables() const {
  std::vector<std::string> out;
  for (const auto* side : {&lhs, &rhs}) {
    for (const auto& group : *side) {
      for (const auto& lit : group) lit.atom.collect_variables(out);
    }
  }
  return out;
}

const PredicateDecl* EslSpec::find_predicate(std::string_view name) const {
  auto it = std::find_if(predicates.begin(), predicates.end(), [&](const PredicateDecl& d) { return d.name == name; });
  return it == predicates.end() ? nullptr : &*it;
}

bool EslSpec::has_variable(std::string_view name) const {
  return std::binary_search(variables.begin(), variables.end(), name);
}

std::string to_string(const Term& term) { return print_term(term, false); }

std::string to_string(const Atom& atom) {
  if (atom.args.empty()) return atom.predicate;
  std::string s = atom.predicate + "(";
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) s += ", ";
    s += to_string(atom.args[i]);
  }
  return s + ")";
}

std::string to_string(const PredLiteral& literal) {
  return (literal.negated ? "not " : "") + to_string(literal.atom);
}

std::string to_string(const EslRule& rule) {
  std::string s;
  for (std::size_t i = 0; i < rule.lhs.size(); ++i) {
    if (i) s += " or ";
    for (std::size_t j = 0; j < rule.lhs[i].size(); ++j) {
      if (j) s += " and ";
      s += to_string(rule.lhs[i][j]);
    }
  }
  s += " => ";
  for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
    if (i) s += " and ";
    const auto& clause = rule.rhs[i];
    bool wrap = clause.size() > 1 && rule.rhs.size() > 1;
    if (wrap) s += "(";
    for (std::size_t j = 0; j < clause.size(); ++j) {
      if (j) s += " or ";
      s += to_string(clause[j]);
    }
    if (wrap) s += ")";
  }
  return s;
}

std::string to_string(const PredicateDecl& decl) {
  std::string s = decl.name + "(";
  for (std::size_t i = 0; i < decl.params.size(); ++i) {
    if (i) s += ", ";
    s += decl.params[i];
  }
  return s + ") := " + decl.description;
}

}  // namespace eslrv::esl
