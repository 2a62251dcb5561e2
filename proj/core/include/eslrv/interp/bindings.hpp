#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eslrv/esl/ast.hpp"
#include "eslrv/interp/domain.hpp"

namespace eslrv::interp {

enum class BindingKind { Complete, Partial };

std::string_view to_string(BindingKind kind);

/// Variable -> object id. A binding is Complete for its rule when every
/// left-hand atom is ground under it and has a perceived truth value.
struct Binding {
  std::map<std::string, std::string> assignment;
  BindingKind kind = BindingKind::Partial;

  /// `{x->o1, y->o2}`
  std::string to_string() const;
  friend bool operator==(const Binding&, const Binding&) = default;
};

class BindingExplosion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BindingOptions {
  std::size_t max_bindings = 10000;
  const esl::FunctionRegistry* registry = &esl::FunctionRegistry::builtin();
};

/// Search-and-replace binding of a rule's variables to objects.
///
/// Each left-hand atom is matched against the perceived facts of the same
/// predicate; plain-variable arguments bind to the object carrying the
/// fact's argument value, ground arguments must fold to that value. Bindings
/// are the consistent unions of per-atom matches (at least one atom
/// matched), reduced to the maximal ones, classified Complete/Partial and
/// sorted by (variable, object id).
///
/// Throws BindingExplosion past `max_bindings` candidates.
std::vector<Binding> enumerate_bindings(const esl::EslRule& rule, std::span<const DomainObject> objects,
                                        const std::vector<PerceivedFact>& facts,
                                        const BindingOptions& options = {});

}  // namespace eslrv::interp
