#include "eslrv/interp/domain.hpp"

#include <algorithm>

namespace eslrv::interp {

const DomainObject* DomainOfDiscourse::find(const std::string& id) const {
  auto it = std::find_if(objects.begin(), objects.end(), [&](const DomainObject& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

logic::PropositionId GroundAtom::id() const {
  std::string text = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) text += ",";
    text += args[i].canonical();
  }
  return logic::PropositionId(text + ")");
}

GroundAtom ground_atom(const esl::Atom& atom, const esl::FunctionRegistry& registry) {
  GroundAtom out{atom.predicate, {}};
  out.args.reserve(atom.args.size());
  for (const auto& arg : atom.args) out.args.push_back(esl::eval_term(arg, registry));
  return out;
}

FactTable make_fact_table(const std::vector<PerceivedFact>& facts) {
  FactTable table;
  for (const auto& f : facts) table.emplace(f.atom.id(), f.truth);
  return table;
}

}  // namespace eslrv::interp
