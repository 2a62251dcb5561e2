#include "eslrv/logic/brute_force.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace eslrv::logic {

BruteForceResult brute_force_check(std::span<const GroundImplication> rules, const Assignments& assignments) {
  std::vector<PropositionId> props;
  for (const auto& r : rules) {
    for (const auto& l : r.body) props.push_back(l.prop);
    props.push_back(r.head.prop);
  }
  for (const auto& [p, t] : assignments) props.push_back(p);
  std::sort(props.begin(), props.end());
  props.erase(std::unique(props.begin(), props.end()), props.end());
  if (props.size() > kBruteForceMaxPropositions) {
    throw TooLarge("brute_force_check: " + std::to_string(props.size()) + " propositions exceed the limit of " +
                   std::to_string(kBruteForceMaxPropositions));
  }

  auto index = [&](const PropositionId& p) {
    return static_cast<std::size_t>(std::lower_bound(props.begin(), props.end(), p) - props.begin());
  };
  struct Clause {
    std::vector<std::pair<std::size_t, bool>> body;  // (prop, negated)
    std::pair<std::size_t, bool> head;
  };
  std::vector<Clause> clauses;
  for (const auto& r : rules) {
    Clause c;
    for (const auto& l : r.body) c.body.emplace_back(index(l.prop), l.negated);
    c.head = {index(r.head.prop), r.head.negated};
    clauses.push_back(std::move(c));
  }
  std::uint32_t must_true = 0;
  std::uint32_t must_false = 0;
  for (const auto& [p, t] : assignments) {
    if (t == Truth::True) must_true |= 1u << index(p);
    if (t == Truth::False) must_false |= 1u << index(p);
  }

  const std::size_t n = props.size();
  auto holds = [](std::uint32_t model, std::pair<std::size_t, bool> lit) {
    return (((model >> lit.first) & 1u) != 0) != lit.second;
  };

  BruteForceResult result;
  std::uint32_t all_true = ~0u;   // props true in every model
  std::uint32_t all_false = ~0u;  // props false in every model
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    auto model = static_cast<std::uint32_t>(m);
    if ((model & must_true) != must_true || (model & must_false) != 0) continue;
    bool ok = std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) {
      bool fires = std::all_of(c.body.begin(), c.body.end(), [&](const auto& l) { return holds(model, l); });
      return !fires || holds(model, c.head);
    });
    if (!ok) continue;
    ++result.models;
    all_true &= model;
    all_false &= ~model;
  }

  result.consistent = result.models > 0;
  if (result.consistent) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((all_true >> i) & 1u) result.forced.insert(positive(props[i]));
      if ((all_false >> i) & 1u) result.forced.insert(negative(props[i]));
    }
  }
  return result;
}

}  // namespace eslrv::logic
