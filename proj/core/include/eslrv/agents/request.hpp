#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace eslrv::agents {

enum class RequestKind { ExtractObjects, Propositionalize, Instantiate, AnswerQuery, JudgeViolation };

std::string_view to_string(RequestKind kind);
std::optional<RequestKind> parse_request_kind(std::string_view text);

/// Perception extracts and grounds; the target is the model under test.
enum class Role { Perception, Target };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

/// One agent question. `payload` shape depends on `kind`:
///   ExtractObjects   {}
///   Propositionalize {"objects": [text...]}
///   Instantiate      {"binding": {var: text}, "constraints": [atom text...], "unbound": [var...]}
///   AnswerQuery      {"question": text}
///   JudgeViolation   {}
struct AgentRequest {
  RequestKind kind = RequestKind::AnswerQuery;
  Role role = Role::Perception;
  /// Predicate declarations (and rules for JudgeViolation), one per line.
  std::string spec_excerpt;
  std::string context;
  std::string llm_output;
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
  /// 0 for the first ask, 1 for the repair re-prompt.
  int repair_attempt = 0;

  /// Prompt-independent form used for fixture lookup.
  nlohmann::ordered_json canonical() const;
  /// Lowercase hex SHA-256 of `canonical().dump()`, invalid UTF-8 replaced
  /// by U+FFFD.
  std::string hash() const;
};

struct ChatMessage {
  std::string role;
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatReply {
  std::string text;
  /// Transport retries spent before the reply arrived.
  int retries = 0;
};

class AgentError : public std::runtime_error {
 public:
  enum class Kind { Unavailable, Malformed };

  AgentError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(AgentError::Kind kind);

/// Turns a rendered conversation into one reply. Instances are used by one
/// case at a time unless documented otherwise.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatReply complete(const AgentRequest& request, const std::vector<ChatMessage>& messages) = 0;
};

std::string sha256_hex(std::string_view data);

}  // namespace eslrv::agents
