#include "eslrv/agents/request.hpp"

#include <array>
#include <cstdio>

#include <openssl/evp.h>

namespace eslrv::agents {

namespace {

constexpr std::array<std::pair<RequestKind, std::string_view>, 5> kKinds{{
    {RequestKind::ExtractObjects, "ExtractObjects"},
    {RequestKind::Propositionalize, "Propositionalize"},
    {RequestKind::Instantiate, "Instantiate"},
    {RequestKind::AnswerQuery, "AnswerQuery"},
    {RequestKind::JudgeViolation, "JudgeViolation"},
}};

}  // namespace

std::string_view to_string(RequestKind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<RequestKind> parse_request_kind(std::string_view text) {
  for (const auto& [k, name] : kKinds) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Role role) { return role == Role::Perception ? "perception" : "target"; }

std::optional<Role> parse_role(std::string_view text) {
  if (text == "perception") return Role::Perception;
  if (text == "target") return Role::Target;
  return std::nullopt;
}

std::string_view to_string(AgentError::Kind kind) {
  return kind == AgentError::Kind::Unavailable ? "AgentUnavailable" : "MalformedAgentOutput";
}

nlohmann::ordered_json AgentRequest::canonical() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind);
  j["role"] = to_string(role);
  j["spec"] = spec_excerpt;
  j["context"] = context;
  j["llm_output"] = llm_output;
  j["payload"] = payload;
  j["repair_attempt"] = repair_attempt;
  return j;
}

std::string AgentRequest::hash() const {
  return sha256_hex(canonical().dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace));
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace eslrv::agents
