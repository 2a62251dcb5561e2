#include "eslrv/interp/bindings.hpp"

#include <algorithm>
#include <optional>

namespace eslrv::interp {

std::string_view to_string(BindingKind kind) { return kind == BindingKind::Complete ? "Complete" : "Partial"; }

std::string Binding::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [var, obj] : assignment) {
    if (!first) s += ", ";
    first = false;
    s += var + "->" + obj;
  }
  return s + "}";
}

namespace {

using Assignment = std::map<std::string, std::string>;

struct ObjectIndex {
  std::vector<std::pair<esl::Constant, std::string>> by_value;
  std::map<std::string, esl::Constant> value_of;

  explicit ObjectIndex(std::span<const DomainObject> objects) {
    for (const auto& o : objects) {
      esl::Constant v = o.value();
      value_of.emplace(o.id, v);
      bool seen = std::any_of(by_value.begin(), by_value.end(), [&](const auto& e) { return e.first == v; });
      if (!seen) by_value.emplace_back(std::move(v), o.id);
    }
  }

  const std::string* object_with(const esl::Constant& value) const {
    for (const auto& [v, id] : by_value) {
      if (v == value) return &id;
    }
    return nullptr;
  }
};

/// Matches one atom against one fact; returns the implied variable map.
std::optional<Assignment> match(const esl::Atom& atom, const GroundAtom& fact, const ObjectIndex& objects,
                                const esl::FunctionRegistry& registry) {
  if (atom.predicate != fact.predicate || atom.args.size() != fact.args.size()) return std::nullopt;
  Assignment m;
  for (std::size_t k = 0; k < atom.args.size(); ++k) {
    const esl::Term& t = atom.args[k];
    const esl::Constant& value = fact.args[k];
    if (const auto* v = std::get_if<esl::Variable>(&t.node)) {
      const std::string* obj = objects.object_with(value);
      if (!obj) return std::nullopt;
      auto [it, inserted] = m.emplace(v->name, *obj);
      if (!inserted && it->second != *obj) return std::nullopt;
    } else if (t.is_ground()) {
      try {
        if (esl::eval_term(t, registry) != value) return std::nullopt;
      } catch (const esl::EvalError&) {
        return std::nullopt;
      }
    } else {
      return std::nullopt;
    }
  }
  return m;
}

bool compatible(const Assignment& a, const Assignment& b) {
  for (const auto& [var, obj] : b) {
    auto it = a.find(var);
    if (it != a.end() && it->second != obj) return false;
  }
  return true;
}

bool subsumed_by(const Assignment& small, const Assignment& big) {
  if (small.size() >= big.size()) return false;
  return std::all_of(small.begin(), small.end(), [&](const auto& e) {
    auto it = big.find(e.first);
    return it != big.end() && it->second == e.second;
  });
}

}  // namespace

std::vector<Binding> enumerate_bindings(const esl::EslRule& rule, std::span<const DomainObject> objects,
                                        const std::vector<PerceivedFact>& facts, const BindingOptions& options) {
  const auto& registry = *options.registry;
  ObjectIndex index(objects);
  FactTable table = make_fact_table(facts);
  std::vector<esl::Atom> atoms = rule.lhs_atoms();

  std::vector<std::vector<Assignment>> matches(atoms.size());
  bool any_variable_free = false;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    std::vector<std::string> vars;
    atoms[a].collect_variables(vars);
    if (vars.empty()) any_variable_free = true;
    for (const auto& fact : facts) {
      auto m = match(atoms[a], fact.atom, index, registry);
      if (m && std::find(matches[a].begin(), matches[a].end(), *m) == matches[a].end()) {
        matches[a].push_back(std::move(*m));
      }
    }
  }

  std::vector<Assignment> candidates;
  if (any_variable_free) candidates.emplace_back();
  Assignment current;
  auto explode = [&] {
    throw BindingExplosion("more than " + std::to_string(options.max_bindings) + " variable bindings for rule '" +
                           esl::to_string(rule) + "'");
  };
  auto search = [&](auto&& self, std::size_t a, std::size_t matched) -> void {
    if (a == atoms.size()) {
      if (matched > 0) {
        candidates.push_back(current);
        if (candidates.size() > options.max_bindings) explode();
      }
      return;
    }
    self(self, a + 1, matched);
    for (const auto& m : matches[a]) {
      if (!compatible(current, m)) continue;
      Assignment saved = current;
      current.insert(m.begin(), m.end());
      self(self, a + 1, matched + 1);
      current = std::move(saved);
    }
  };
  search(search, 0, 0);

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<Binding> out;
  for (const auto& c : candidates) {
    bool dominated = std::any_of(candidates.begin(), candidates.end(), [&](const Assignment& o) { return subsumed_by(c, o); });
    if (dominated) continue;

    std::map<std::string, esl::Constant> values;
    for (const auto& [var, obj] : c) values.emplace(var, index.value_of.at(obj));
    bool complete = std::all_of(atoms.begin(), atoms.end(), [&](const esl::Atom& atom) {
      esl::Atom bound = esl::substitute(atom, values);
      if (!bound.is_ground()) return false;
      try {
        return table.count(ground_atom(bound, registry).id()) > 0;
      } catch (const esl::EvalError&) {
        return false;
      }
    });
    out.push_back(Binding{c, complete ? BindingKind::Complete : BindingKind::Partial});
  }
  return out;
}

}  // namespace eslrv::interp
