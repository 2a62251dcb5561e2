#pragma once

#include <string>

#include "eslrv/esl/ast.hpp"
#include "eslrv/esl/builtins.hpp"

namespace eslrv::esl {

/// Natural-language rendering of a ground atom: the declaration's
/// description with every parameter word replaced by the folded argument.
/// String arguments are inserted verbatim, numbers in canonical decimal.
///
/// Throws EvalError(UnboundVariable) if the atom still contains a variable
/// and std::invalid_argument if `decl` does not match the atom.
std::string render_atom_text(const Atom& atom, const PredicateDecl& decl,
                             const FunctionRegistry& registry = FunctionRegistry::builtin());

/// Same substitution over already-folded arguments.
std::string render_description(const PredicateDecl& decl, const std::vector<Constant>& args);

}  // namespace eslrv::esl
