#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "eslrv/logic/truth.hpp"

namespace eslrv::agents {

/// A reply that does not fit its schema. Triggers the repair re-prompt.
class ParseFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Content of the first ```json (or bare ```) fence; a reply that is a bare
/// JSON object is accepted too.
nlohmann::json extract_json_block(std::string_view reply);

struct RawFact {
  std::string predicate;
  /// Argument texts; JSON numbers keep their literal spelling.
  std::vector<std::string> args;
  logic::Truth truth = logic::Truth::Unknown;
  friend bool operator==(const RawFact&, const RawFact&) = default;
};

std::vector<std::string> parse_objects_reply(std::string_view reply);
std::vector<RawFact> parse_facts_reply(std::string_view reply);
/// nullopt is an explicit refusal (`"witness": null`).
std::optional<std::map<std::string, std::string>> parse_witness_reply(std::string_view reply);
/// Accepts the JSON form or a bare TRUE/FALSE/UNKNOWN token.
logic::Truth parse_answer_reply(std::string_view reply);
bool parse_judgement_reply(std::string_view reply);

}  // namespace eslrv::agents
