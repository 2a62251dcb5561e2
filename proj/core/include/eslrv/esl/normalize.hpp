#pragma once

#include <cstddef>

#include "eslrv/esl/parser.hpp"

namespace eslrv::esl {

/// Converts an arbitrary implication into DeNF: negations are pushed to the
/// atoms, the left side is distributed into DNF and the right side into CNF.
/// Duplicate literals inside a group and duplicate groups are dropped.
///
/// Throws SpecError(Blowup) when either side needs more than `clause_bound`
/// groups.
EslRule normalize_to_denf(const Implication& implication, std::size_t clause_bound = 256);

/// Strict shape check: succeeds only when the left side already is a DNF and
/// the right side a CNF. Nested operators of the same kind are flattened.
/// Throws SpecError(NotDeNF) naming the offending sub-formula of `source`.
EslRule to_denf_strict(const Implication& implication, std::string_view source, const std::string& section);

}  // namespace eslrv::esl
