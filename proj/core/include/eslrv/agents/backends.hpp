#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "eslrv/agents/request.hpp"

namespace eslrv::agents {

struct FixtureEntry {
  std::string request_hash;
  std::string request_kind;
  std::string response_text;
};

std::vector<FixtureEntry> load_fixtures(const std::filesystem::path& jsonl);
std::string to_jsonl_line(const FixtureEntry& entry);

/// Replays recorded replies by request hash. Read-only after construction,
/// so one instance may serve concurrent cases.
class FixtureBackend : public ChatBackend {
 public:
  explicit FixtureBackend(const std::vector<FixtureEntry>& entries);
  static FixtureBackend from_files(const std::vector<std::filesystem::path>& files);

  ChatReply complete(const AgentRequest& request, const std::vector<ChatMessage>& messages) override;
  std::size_t size() const { return replies_.size(); }

 private:
  std::map<std::string, std::string> replies_;
};

/// Rule-based canned replies for hand-written scenarios. A rule matches on
/// kind, optionally role, and optionally a substring of the canonical
/// request; the first matching rule answers. Read-only after construction.
class ScriptedBackend : public ChatBackend {
 public:
  struct Rule {
    RequestKind kind;
    std::optional<Role> role;
    std::vector<std::string> contains;
    std::string response;
  };

  explicit ScriptedBackend(std::vector<Rule> rules) : rules_(std::move(rules)) {}
  /// JSON array of {kind, role?, contains? (string or list), response}.
  static ScriptedBackend from_json(const nlohmann::json& script);
  static ScriptedBackend from_file(const std::filesystem::path& path);

  ChatReply complete(const AgentRequest& request, const std::vector<ChatMessage>& messages) override;

 private:
  std::vector<Rule> rules_;
};

/// Thread-safe appender for fixture lines.
class FixtureWriter {
 public:
  explicit FixtureWriter(std::filesystem::path out, bool truncate = true);
  void append(const FixtureEntry& entry);

 private:
  std::filesystem::path out_;
  std::mutex mutex_;
};

/// Appends every exchange of `inner` through a writer that several
/// recorders may share.
class RecordingBackend : public ChatBackend {
 public:
  RecordingBackend(std::shared_ptr<ChatBackend> inner, std::shared_ptr<FixtureWriter> writer)
      : inner_(std::move(inner)), writer_(std::move(writer)) {}

  ChatReply complete(const AgentRequest& request, const std::vector<ChatMessage>& messages) override;

 private:
  std::shared_ptr<ChatBackend> inner_;
  std::shared_ptr<FixtureWriter> writer_;
};

struct AgentConfig {
  /// Base URL; requests go to `<endpoint>/v1/chat/completions`.
  std::string endpoint = "https://api.openai.com";
  std::string model = "gpt-4.1-nano";
  /// Name of the environment variable holding the API key; empty sends no
  /// Authorization header.
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.0;
  std::optional<std::int64_t> seed = 0;
  int max_retries = 2;
  double timeout_seconds = 60.0;
  std::filesystem::path prompt_dir;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// OpenAI-compatible chat-completions client. Retries transport errors,
/// 429 and 5xx responses up to `max_retries` times with exponential backoff.
class OpenAiBackend : public ChatBackend {
 public:
  explicit OpenAiBackend(AgentConfig config);

  ChatReply complete(const AgentRequest& request, const std::vector<ChatMessage>& messages) override;

  /// Request body as sent on the wire.
  nlohmann::json request_body(const std::vector<ChatMessage>& messages) const;

 private:
  AgentConfig config_;
  std::string base_;
  std::string path_;
};

}  // namespace eslrv::agents
