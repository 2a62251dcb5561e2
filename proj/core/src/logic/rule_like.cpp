#include "eslrv/logic/rule_like.hpp"

namespace eslrv::logic {

std::vector<GroundImplication> to_rule_like(const GroundDeNF& psi) {
  std::vector<GroundImplication> out;
  for (const auto& conj : psi.lhs) {
    for (const auto& clause : psi.rhs) {
      for (std::size_t t = 0; t < clause.size(); ++t) {
        std::vector<GroundLiteral> body = conj;
        for (std::size_t k = 0; k < clause.size(); ++k) {
          if (k != t) body.push_back(clause[k].complement());
        }
        out.emplace_back(std::move(body), clause[t]);
      }
    }
  }
  canonicalize(out);
  return out;
}

std::vector<GroundImplication> to_rule_like(std::span<const GroundDeNF> rules) {
  std::vector<GroundImplication> out;
  for (const auto& psi : rules) {
    auto part = to_rule_like(psi);
    out.insert(out.end(), part.begin(), part.end());
  }
  canonicalize(out);
  return out;
}

}  // namespace eslrv::logic
