#include "eslrv/logic/ground.hpp"

#include <algorithm>
#include <cctype>

namespace eslrv::logic {

std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::True: return "TRUE";
    case Truth::False: return "FALSE";
    case Truth::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<Truth> parse_truth(std::string_view text) {
  std::string upper;
  for (char c : text) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (upper == "TRUE") return Truth::True;
  if (upper == "FALSE") return Truth::False;
  if (upper == "UNKNOWN") return Truth::Unknown;
  return std::nullopt;
}

std::string GroundLiteral::to_string() const { return (negated ? "not " : "") + prop.text(); }

namespace {

std::string join_group(const std::vector<GroundLiteral>& group, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (i) s += sep;
    s += group[i].to_string();
  }
  return s;
}

}  // namespace

std::string GroundDeNF::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (i) s += " or ";
    s += join_group(lhs[i], " and ");
  }
  s += " => ";
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (i) s += " and ";
    bool wrap = rhs[i].size() > 1 && rhs.size() > 1;
    s += wrap ? "(" + join_group(rhs[i], " or ") + ")" : join_group(rhs[i], " or ");
  }
  return s;
}

GroundImplication::GroundImplication(std::vector<GroundLiteral> body_literals, GroundLiteral head_literal)
    : body(std::move(body_literals)), head(std::move(head_literal)) {
  std::sort(body.begin(), body.end());
  body.erase(std::unique(body.begin(), body.end()), body.end());
}

std::string GroundImplication::to_string() const {
  std::string s = join_group(body, " and ");
  return s.empty() ? "=> " + head.to_string() : s + " => " + head.to_string();
}

std::string GroundImplication::body_label() const {
  return body.empty() ? "true" : join_group(body, "&");
}

bool canonical_less(const GroundImplication& a, const GroundImplication& b) {
  return a.to_string() < b.to_string();
}

void canonicalize(std::vector<GroundImplication>& rules) {
  std::vector<std::pair<std::string, GroundImplication>> keyed;
  keyed.reserve(rules.size());
  for (auto& r : rules) keyed.emplace_back(r.to_string(), std::move(r));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  rules.clear();
  for (auto& [key, rule] : keyed) rules.push_back(std::move(rule));
}

}  // namespace eslrv::logic
