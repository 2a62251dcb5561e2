#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "eslrv/agents/request.hpp"

namespace eslrv::agents {

struct PromptTemplate {
  std::string system;
  /// May use {{spec}}, {{context}}, {{llm_output}} and {{payload}}.
  std::string user;
};

/// Prompt text per request kind plus the repair instruction.
class PromptSet {
 public:
  /// Templates compiled into the library.
  static PromptSet builtin();

  /// Built-ins overridden by `<dir>/<file_stem(kind)>.txt` and
  /// `<dir>/repair.txt` where present. A template file holds the system
  /// text, a line `---`, then the user text.
  static PromptSet from_directory(const std::filesystem::path& dir);

  const PromptTemplate& get(RequestKind kind) const { return templates_.at(kind); }
  const std::string& repair() const { return repair_; }

  std::vector<ChatMessage> render(const AgentRequest& request) const;

  /// `extract_objects`, `propositionalize`, ...
  static std::string file_stem(RequestKind kind);
  /// Inverse of the file layout described in from_directory.
  static std::string to_file_text(const PromptTemplate& t);
  static PromptTemplate from_file_text(const std::string& text);

 private:
  std::map<RequestKind, PromptTemplate> templates_;
  std::string repair_;
};

}  // namespace eslrv::agents
