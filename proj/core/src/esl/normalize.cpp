#include "eslrv/esl/normalize.hpp"

#include <algorithm>

namespace eslrv::esl {

namespace {

using Groups = std::vector<std::vector<PredLiteral>>;

void flatten(const Formula& f, Formula::Kind op, std::vector<const Formula*>& out) {
  if (f.kind == op) {
    for (const auto& child : f.children) flatten(child, op, out);
  } else {
    out.push_back(&f);
  }
}

const PredLiteral* as_literal(const Formula& f, PredLiteral& storage) {
  if (f.kind == Formula::Kind::Atom) {
    storage = PredLiteral{f.atom, false};
    return &storage;
  }
  if (f.kind == Formula::Kind::Not && f.children.front().kind == Formula::Kind::Atom) {
    storage = PredLiteral{f.children.front().atom, true};
    return &storage;
  }
  return nullptr;
}

/// Strict: outer operator `outer`, inner `inner`, leaves must be literals.
Groups strict_groups(const Formula& f, Formula::Kind outer, Formula::Kind inner, std::string_view source,
                     const std::string& section, const char* shape) {
  std::vector<const Formula*> tops;
  flatten(f, outer, tops);
  Groups groups;
  for (const Formula* top : tops) {
    std::vector<const Formula*> leaves;
    flatten(*top, inner, leaves);
    std::vector<PredLiteral> group;
    for (const Formula* leaf : leaves) {
      PredLiteral storage;
      if (!as_literal(*leaf, storage)) {
        std::string offending(source.substr(leaf->begin, leaf->end - leaf->begin));
        SourcePos pos{section, 1, leaf->begin + 1};
        throw SpecError(SpecErrorKind::NotDeNF, pos,
                        std::string("'") + offending + "' breaks the " + shape + " shape required here");
      }
      group.push_back(std::move(storage));
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

Formula to_nnf(const Formula& f, bool negate) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      Formula atom = Formula::make_atom(f.atom);
      return negate ? Formula::make_not(std::move(atom)) : atom;
    }
    case Formula::Kind::Not: return to_nnf(f.children.front(), !negate);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> children;
      for (const auto& child : f.children) children.push_back(to_nnf(child, negate));
      bool is_and = (f.kind == Formula::Kind::And) != negate;
      return is_and ? Formula::make_and(std::move(children)) : Formula::make_or(std::move(children));
    }
  }
  return f;
}

void dedupe(std::vector<PredLiteral>& group) {
  std::vector<PredLiteral> out;
  for (auto& lit : group) {
    if (std::find(out.begin(), out.end(), lit) == out.end()) out.push_back(std::move(lit));
  }
  group = std::move(out);
}

void dedupe(Groups& groups) {
  Groups out;
  for (auto& g : groups) {
    dedupe(g);
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  }
  groups = std::move(out);
}

/// Distributes an NNF formula: `outer` is the connective joining groups,
/// the dual connective joins literals inside a group.
Groups distribute(const Formula& f, Formula::Kind outer, std::size_t bound) {
  if (f.kind == Formula::Kind::Atom) return {{PredLiteral{f.atom, false}}};
  if (f.kind == Formula::Kind::Not) return {{PredLiteral{f.children.front().atom, true}}};

  Groups result;
  if (f.kind == outer) {
    for (const auto& child : f.children) {
      Groups part = distribute(child, outer, bound);
      result.insert(result.end(), part.begin(), part.end());
      if (result.size() > bound) break;
    }
  } else {
    result = {{}};
    for (const auto& child : f.children) {
      Groups part = distribute(child, outer, bound);
      Groups next;
      for (const auto& left : result) {
        for (const auto& right : part) {
          auto merged = left;
          merged.insert(merged.end(), right.begin(), right.end());
          next.push_back(std::move(merged));
          if (next.size() > bound) break;
        }
        if (next.size() > bound) break;
      }
      result = std::move(next);
      if (result.size() > bound) break;
    }
  }
  if (result.size() > bound) {
    throw SpecError(SpecErrorKind::Blowup, SourcePos{},
                    "normalization exceeds the limit of " + std::to_string(bound) + " clauses");
  }
  dedupe(result);
  return result;
}

}  // namespace

EslRule to_denf_strict(const Implication& implication, std::string_view source, const std::string& section) {
  EslRule rule;
  rule.lhs = strict_groups(implication.lhs, Formula::Kind::Or, Formula::Kind::And, source, section, "DNF");
  rule.rhs = strict_groups(implication.rhs, Formula::Kind::And, Formula::Kind::Or, source, section, "CNF");
  return rule;
}

EslRule normalize_to_denf(const Implication& implication, std::size_t clause_bound) {
  EslRule rule;
  rule.lhs = distribute(to_nnf(implication.lhs, false), Formula::Kind::Or, clause_bound);
  rule.rhs = distribute(to_nnf(implication.rhs, false), Formula::Kind::And, clause_bound);
  return rule;
}

}  // namespace eslrv::esl
