#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>

#include "eslrv/logic/ground.hpp"

namespace eslrv::logic {

class TooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct BruteForceResult {
  bool consistent = false;
  /// Literals true in every two-valued model that agrees with the seeds.
  std::set<GroundLiteral> forced;
  std::size_t models = 0;
};

inline constexpr std::size_t kBruteForceMaxPropositions = 20;

/// Exhaustive model enumeration over every proposition occurring in the
/// rules or the seeds. Unknown seeds range over both values. Throws
/// TooLarge beyond kBruteForceMaxPropositions propositions.
BruteForceResult brute_force_check(std::span<const GroundImplication> rules, const Assignments& assignments);

}  // namespace eslrv::logic
