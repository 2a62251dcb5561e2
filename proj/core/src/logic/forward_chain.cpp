#include "eslrv/logic/forward_chain.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace eslrv::logic {

std::string_view to_string(Consistency c) {
  return c == Consistency::Consistent ? "Consistent" : "Inconsistent";
}

FCGraph::FCGraph(std::vector<GroundImplication> rules) : rules_(std::move(rules)) {
  canonicalize(rules_);
  for (const auto& r : rules_) {
    for (const auto& l : r.body) props_.push_back(l.prop);
    props_.push_back(r.head.prop);
  }
  std::sort(props_.begin(), props_.end());
  props_.erase(std::unique(props_.begin(), props_.end()), props_.end());
  up_.assign(props_.size() * 2, 0);
  down_.assign(props_.size() * 2, 0);
}

std::optional<std::size_t> FCGraph::find(const PropositionId& p) const {
  auto it = std::lower_bound(props_.begin(), props_.end(), p);
  if (it == props_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - props_.begin());
}

std::size_t FCGraph::literal_index(const GroundLiteral& l) const {
  return *find(l.prop) * 2 + (l.negated ? 1 : 0);
}

GroundLiteral FCGraph::literal_at(std::size_t index) const { return {props_[index / 2], (index & 1) != 0}; }

std::vector<GroundLiteral> FCGraph::literal_nodes() const {
  std::vector<GroundLiteral> out;
  out.reserve(props_.size() * 2);
  for (std::size_t i = 0; i < props_.size() * 2; ++i) out.push_back(literal_at(i));
  return out;
}

std::vector<FCGraph::Edge> FCGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    NodeRef lhs{NodeRef::Kind::Lhs, r};
    for (const auto& l : rules_[r].body) out.push_back({{NodeRef::Kind::Literal, literal_index(l)}, lhs});
    out.push_back({lhs, {NodeRef::Kind::Literal, literal_index(rules_[r].head)}});
  }
  return out;
}

std::string FCGraph::label(NodeRef node) const {
  if (node.kind == NodeRef::Kind::Lhs) return rules_.at(node.index).body_label();
  return literal_at(node.index).to_string();
}

std::set<GroundLiteral> FCGraph::collect(const std::vector<char>& marks) const {
  std::set<GroundLiteral> out;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (marks[i]) out.insert(literal_at(i));
  }
  return out;
}

std::vector<PropositionId> FCGraph::seed(const Assignments& assignments) {
  std::vector<PropositionId> skipped;
  for (const auto& [prop, truth] : assignments) {
    auto p = find(prop);
    if (!p) {
      skipped.push_back(prop);
      continue;
    }
    if (truth == Truth::Unknown) continue;
    std::size_t pos = *p * 2;
    std::size_t neg = pos + 1;
    std::size_t yes = truth == Truth::True ? pos : neg;
    std::size_t no = truth == Truth::True ? neg : pos;
    up_[yes] = 1;
    down_[no] = 1;
  }
  return skipped;
}

FCGraph build_graph(std::vector<GroundImplication> rules) { return FCGraph(std::move(rules)); }

FCGraph seed_truth(FCGraph graph, const Assignments& assignments, std::vector<PropositionId>* skipped) {
  auto missing = graph.seed(assignments);
  if (skipped) *skipped = std::move(missing);
  return graph;
}

namespace {

constexpr std::size_t kSeeded = static_cast<std::size_t>(-1);

class Chainer {
 public:
  explicit Chainer(const FCGraph& g)
      : graph_(g), rules_(g.rules()), up_(g.up_marks()), down_(g.down_marks()), reason_(up_.size(), kSeeded) {}

  FCOutcome run() {
    FCOutcome out;
    if (auto clash = seed_conflict()) {
      out.status = Consistency::Inconsistent;
      out.conflict = graph_.literal_at(*clash);
      out.trigger = Derivation{graph_.literal_at(*clash), {}};
      finish(out);
      return out;
    }

    std::vector<std::vector<std::size_t>> watchers(up_.size());
    std::vector<std::size_t> missing(rules_.size(), 0);
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      for (const auto& l : rules_[r].body) {
        std::size_t li = graph_.literal_index(l);
        watchers[li].push_back(r);
        if (!up_[li]) ++missing[r];
      }
      if (missing[r] == 0) ready.push(r);
    }

    while (!ready.empty()) {
      std::size_t r = ready.top();
      ready.pop();
      std::size_t head = graph_.literal_index(rules_[r].head);
      std::size_t comp = head ^ 1;
      if (up_[head]) continue;

      up_[head] = 1;
      down_[comp] = 1;
      reason_[head] = r;
      out.derived.push_back(Derivation{graph_.literal_at(head), chain_of(head)});

      if (up_[comp] || down_[head]) {
        out.status = Consistency::Inconsistent;
        out.conflict = graph_.literal_at(head & ~std::size_t{1});
        out.trigger = out.derived.back();
        out.derived.pop_back();
        finish(out);
        return out;
      }
      for (std::size_t w : watchers[head]) {
        if (--missing[w] == 0) ready.push(w);
      }
    }
    finish(out);
    return out;
  }

 private:
  std::optional<std::size_t> seed_conflict() const {
    for (std::size_t i = 0; i < up_.size(); ++i) {
      if (up_[i] && down_[i]) return i & ~std::size_t{1};
    }
    return std::nullopt;
  }

  std::vector<GroundImplication> chain_of(std::size_t literal) const {
    std::vector<GroundImplication> chain;
    std::vector<char> visited(rules_.size(), 0);
    std::function<void(std::size_t)> visit = [&](std::size_t li) {
      std::size_t r = reason_[li];
      if (r == kSeeded || visited[r]) return;
      visited[r] = 1;
      for (const auto& l : rules_[r].body) visit(graph_.literal_index(l));
      chain.push_back(rules_[r]);
    };
    visit(literal);
    return chain;
  }

  void finish(FCOutcome& out) const {
    for (std::size_t i = 0; i < up_.size(); ++i) {
      if (up_[i]) out.lit_up.insert(graph_.literal_at(i));
      if (down_[i]) out.lit_down.insert(graph_.literal_at(i));
    }
  }

  const FCGraph& graph_;
  std::span<const GroundImplication> rules_;
  std::vector<char> up_;
  std::vector<char> down_;
  std::vector<std::size_t> reason_;
};

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

FCOutcome forward_chain(const FCGraph& graph) { return Chainer(graph).run(); }

std::string to_dot(const FCGraph& graph) {
  std::ostringstream os;
  os << "digraph fc {\n  rankdir=LR;\n";
  const auto& up = graph.up_marks();
  const auto& down = graph.down_marks();
  auto literals = graph.literal_nodes();
  for (std::size_t i = 0; i < literals.size(); ++i) {
    os << "  l" << i << " [shape=ellipse, label=\"" << dot_escape(literals[i].to_string()) << "\"";
    if (up[i] && down[i]) {
      os << ", style=filled, fillcolor=red";
    } else if (up[i]) {
      os << ", style=filled, fillcolor=palegreen";
    } else if (down[i]) {
      os << ", style=filled, fillcolor=lightgray";
    }
    os << "];\n";
  }
  for (std::size_t r = 0; r < graph.rules().size(); ++r) {
    os << "  r" << r << " [shape=box, label=\"" << dot_escape(graph.rules()[r].body_label()) << "\"];\n";
  }
  for (const auto& e : graph.edges()) {
    auto name = [](FCGraph::NodeRef n) {
      return (n.kind == FCGraph::NodeRef::Kind::Lhs ? "r" : "l") + std::to_string(n.index);
    };
    os << "  " << name(e.from) << " -> " << name(e.to) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace eslrv::logic
