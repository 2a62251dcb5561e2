#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "eslrv/logic/truth.hpp"

namespace eslrv::logic {

/// Canonical text of a ground atom, `Name(arg1,arg2)`, with every argument
/// folded to its canonical constant rendering. Equal ids mean equal atoms.
class PropositionId {
 public:
  PropositionId() = default;
  explicit PropositionId(std::string text) : text_(std::move(text)) {}

  const std::string& text() const { return text_; }

  friend auto operator<=>(const PropositionId&, const PropositionId&) = default;
  friend bool operator==(const PropositionId&, const PropositionId&) = default;

 private:
  std::string text_;
};

struct GroundLiteral {
  PropositionId prop;
  bool negated = false;

  GroundLiteral complement() const { return {prop, !negated}; }
  /// `P(a)` or `not P(a)`.
  std::string to_string() const;

  friend auto operator<=>(const GroundLiteral&, const GroundLiteral&) = default;
  friend bool operator==(const GroundLiteral&, const GroundLiteral&) = default;
};

inline GroundLiteral positive(PropositionId p) { return {std::move(p), false}; }
inline GroundLiteral negative(PropositionId p) { return {std::move(p), true}; }

/// A rule after variable binding: DNF left side, CNF right side.
struct GroundDeNF {
  std::vector<std::vector<GroundLiteral>> lhs;
  std::vector<std::vector<GroundLiteral>> rhs;

  std::string to_string() const;
  friend bool operator==(const GroundDeNF&, const GroundDeNF&) = default;
};

/// Rule-like implication: a conjunction of literals implying one literal.
/// The body is kept sorted and duplicate-free, so equal implications have
/// equal representations.
struct GroundImplication {
  std::vector<GroundLiteral> body;
  GroundLiteral head;

  GroundImplication() = default;
  GroundImplication(std::vector<GroundLiteral> body_literals, GroundLiteral head_literal);

  /// `a and b => c`; a fact rule renders as `=> c`.
  std::string to_string() const;
  /// Label of the LHS node in the forward-chaining graph, `a&b`.
  std::string body_label() const;

  friend bool operator==(const GroundImplication&, const GroundImplication&) = default;
};

/// Orders implications by their canonical text.
bool canonical_less(const GroundImplication& a, const GroundImplication& b);

/// Sorts by canonical text and removes duplicates.
void canonicalize(std::vector<GroundImplication>& rules);

/// Seed truth values. A list rather than a map, because contradictory
/// entries for one proposition are meaningful input.
using Assignment = std::pair<PropositionId, Truth>;
using Assignments = std::vector<Assignment>;

}  // namespace eslrv::logic
