#pragma once

#include <span>
#include <vector>

#include "eslrv/logic/ground.hpp"

namespace eslrv::logic {

/// Rewrites `D1 or ... or Dm => C1 and ... and Cn` into rule-like
/// implications. Every pair (Di, Cj) with Cj = l1 or ... or lk yields, for
/// each t, the implication `Di and not l1 ... (all but lt) => lt`.
///
/// The result is sorted by canonical text and duplicate-free; its
/// conjunction is equivalent to `psi` under two-valued semantics.
std::vector<GroundImplication> to_rule_like(const GroundDeNF& psi);

/// Union over a rule set, canonicalized.
std::vector<GroundImplication> to_rule_like(std::span<const GroundDeNF> rules);

}  // namespace eslrv::logic
