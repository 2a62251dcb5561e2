#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "eslrv/logic/ground.hpp"

namespace eslrv::logic {

/// Forward-chaining graph over rule-like implications.
///
/// Literal nodes exist for every literal occurring in a rule and for its
/// complement. There is one LHS node per implication, with an edge from each
/// body literal to the LHS node and one edge from the LHS node to the head.
/// `lit_up`/`lit_down` are the literals currently marked True/False; seeding
/// keeps them complement-closed (l in up iff not-l in down).
class FCGraph {
 public:
  struct NodeRef {
    enum class Kind { Literal, Lhs };
    Kind kind;
    std::size_t index;
    friend bool operator==(const NodeRef&, const NodeRef&) = default;
  };

  struct Edge {
    NodeRef from;
    NodeRef to;
  };

  FCGraph() = default;
  explicit FCGraph(std::vector<GroundImplication> rules);

  /// Implications in canonical order; index i is LHS node i.
  std::span<const GroundImplication> rules() const { return rules_; }
  std::span<const PropositionId> propositions() const { return props_; }
  std::vector<GroundLiteral> literal_nodes() const;
  std::vector<Edge> edges() const;
  std::string label(NodeRef node) const;

  bool contains(const PropositionId& p) const { return find(p).has_value(); }
  std::optional<std::size_t> find(const PropositionId& p) const;

  std::set<GroundLiteral> lit_up() const { return collect(up_); }
  std::set<GroundLiteral> lit_down() const { return collect(down_); }

  /// Marks seeds; True/False values are marked with complement closure and
  /// Unknown values are ignored. Returns propositions absent from the graph,
  /// which are skipped.
  std::vector<PropositionId> seed(const Assignments& assignments);

  // Index-level access for the chaining procedure. Literal index of
  // proposition p is 2p (positive) or 2p+1 (negated).
  std::size_t literal_index(const GroundLiteral& l) const;
  GroundLiteral literal_at(std::size_t index) const;
  const std::vector<char>& up_marks() const { return up_; }
  const std::vector<char>& down_marks() const { return down_; }

 private:
  std::set<GroundLiteral> collect(const std::vector<char>& marks) const;

  std::vector<GroundImplication> rules_;
  std::vector<PropositionId> props_;
  std::vector<char> up_;
  std::vector<char> down_;
};

FCGraph build_graph(std::vector<GroundImplication> rules);

/// Returns a copy of `graph` with the seeds applied. Skipped propositions
/// are reported through `skipped` when given.
FCGraph seed_truth(FCGraph graph, const Assignments& assignments, std::vector<PropositionId>* skipped = nullptr);

enum class Consistency { Consistent, Inconsistent };

std::string_view to_string(Consistency c);

struct Derivation {
  GroundLiteral literal;
  /// Implications that fired to produce `literal`, in firing order; the last
  /// one has `literal` as its head.
  std::vector<GroundImplication> chain;
};

struct FCOutcome {
  Consistency status = Consistency::Consistent;
  /// Newly derived literals in firing order (seeds excluded).
  std::vector<Derivation> derived;
  /// Positive literal of the proposition found in both Lit-up and Lit-down.
  std::optional<GroundLiteral> conflict;
  /// Literal whose insertion produced the conflict, with its derivation.
  /// Empty chain when the seeds themselves contradict each other.
  std::optional<Derivation> trigger;
  std::set<GroundLiteral> lit_up;
  std::set<GroundLiteral> lit_down;
};

/// Modus-ponens forward chaining to a fixpoint. Whenever every body literal
/// of an implication is in Lit-up, its head joins Lit-up and the head's
/// complement joins Lit-down. Stops at the first insertion that makes
/// Lit-up and Lit-down intersect. Ready implications fire in canonical
/// order, so results are deterministic.
FCOutcome forward_chain(const FCGraph& graph);

/// Graphviz rendering of the graph and its current marks.
std::string to_dot(const FCGraph& graph);

}  // namespace eslrv::logic
