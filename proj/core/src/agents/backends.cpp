#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "eslrv/agents/backends.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

namespace eslrv::agents {

using nlohmann::json;

std::vector<FixtureEntry> load_fixtures(const std::filesystem::path& jsonl) {
  std::ifstream in(jsonl);
  if (!in) throw std::runtime_error("cannot open fixture file " + jsonl.string());
  std::vector<FixtureEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      out.push_back(FixtureEntry{j.at("request_hash").get<std::string>(), j.at("request_kind").get<std::string>(),
                                 j.at("response_text").get<std::string>()});
    } catch (const json::exception& e) {
      throw std::runtime_error(jsonl.string() + ":" + std::to_string(lineno) + ": bad fixture line: " + e.what());
    }
  }
  return out;
}

std::string to_jsonl_line(const FixtureEntry& entry) {
  nlohmann::ordered_json j;
  j["request_hash"] = entry.request_hash;
  j["request_kind"] = entry.request_kind;
  j["response_text"] = entry.response_text;
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

FixtureBackend::FixtureBackend(const std::vector<FixtureEntry>& entries) {
  for (const auto& e : entries) replies_.emplace(e.request_hash, e.response_text);
}

FixtureBackend FixtureBackend::from_files(const std::vector<std::filesystem::path>& files) {
  std::vector<FixtureEntry> all;
  for (const auto& f : files) {
    auto part = load_fixtures(f);
    all.insert(all.end(), part.begin(), part.end());
  }
  return FixtureBackend(all);
}

ChatReply FixtureBackend::complete(const AgentRequest& request, const std::vector<ChatMessage>&) {
  std::string h = request.hash();
  auto it = replies_.find(h);
  if (it == replies_.end()) {
    throw AgentError(AgentError::Kind::Unavailable,
                     "no fixture for " + std::string(to_string(request.kind)) + " request " + h);
  }
  return ChatReply{it->second, 0};
}

ScriptedBackend ScriptedBackend::from_json(const json& script) {
  if (!script.is_array()) throw std::invalid_argument("agent script must be a JSON array");
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < script.size(); ++i) {
    const json& e = script[i];
    std::string where = "script[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("kind") || !e.contains("response")) {
      throw std::invalid_argument(where + " needs \"kind\" and \"response\"");
    }
    Rule r;
    auto kind = parse_request_kind(e["kind"].get<std::string>());
    if (!kind) throw std::invalid_argument(where + ": unknown kind " + e["kind"].dump());
    r.kind = *kind;
    if (e.contains("role")) {
      r.role = parse_role(e["role"].get<std::string>());
      if (!r.role) throw std::invalid_argument(where + ": unknown role " + e["role"].dump());
    }
    if (e.contains("contains")) {
      if (e["contains"].is_string()) {
        r.contains.push_back(e["contains"].get<std::string>());
      } else {
        r.contains = e["contains"].get<std::vector<std::string>>();
      }
    }
    r.response = e["response"].is_string() ? e["response"].get<std::string>() : e["response"].dump();
    rules.push_back(std::move(r));
  }
  return ScriptedBackend(std::move(rules));
}

ScriptedBackend ScriptedBackend::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open agent script " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

ChatReply ScriptedBackend::complete(const AgentRequest& request, const std::vector<ChatMessage>&) {
  // Raw strings, not JSON-escaped, so script authors can quote text verbatim.
  std::string haystack = request.spec_excerpt + "\n" + request.context + "\n" + request.llm_output + "\n" +
                         request.payload.dump(-1, ' ', false, json::error_handler_t::replace);
  if (request.payload.contains("question") && request.payload["question"].is_string()) {
    haystack += "\n" + request.payload["question"].get<std::string>();
  }
  for (const auto& r : rules_) {
    if (r.kind != request.kind) continue;
    if (r.role && *r.role != request.role) continue;
    bool all = std::all_of(r.contains.begin(), r.contains.end(),
                           [&](const std::string& s) { return haystack.find(s) != std::string::npos; });
    if (all) return ChatReply{r.response, 0};
  }
  throw AgentError(AgentError::Kind::Unavailable,
                   "no scripted reply for " + std::string(to_string(request.kind)) + " (" +
                       std::string(to_string(request.role)) + ")");
}

FixtureWriter::FixtureWriter(std::filesystem::path out, bool truncate) : out_(std::move(out)) {
  std::ofstream f(out_, truncate ? std::ios::trunc : std::ios::app);
  if (!f) throw std::runtime_error("cannot write fixture file " + out_.string());
}

void FixtureWriter::append(const FixtureEntry& entry) {
  std::lock_guard lock(mutex_);
  std::ofstream f(out_, std::ios::app);
  if (!f) throw std::runtime_error("cannot write fixture file " + out_.string());
  f << to_jsonl_line(entry) << "\n";
}

ChatReply RecordingBackend::complete(const AgentRequest& request, const std::vector<ChatMessage>& messages) {
  ChatReply reply = inner_->complete(request, messages);
  writer_->append(FixtureEntry{request.hash(), std::string(to_string(request.kind)), reply.text});
  return reply;
}

void AgentConfig::validate() const {
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw std::invalid_argument("temperature must be in [0, 2], got " + std::to_string(temperature));
  }
  if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
  if (!(timeout_seconds > 0.0)) throw std::invalid_argument("timeout_seconds must be positive");
  if (model.empty()) throw std::invalid_argument("model name is empty");
  if (endpoint.rfind("http://", 0) != 0 && endpoint.rfind("https://", 0) != 0) {
    throw std::invalid_argument("endpoint must start with http:// or https://: " + endpoint);
  }
}

OpenAiBackend::OpenAiBackend(AgentConfig config) : config_(std::move(config)) {
  config_.validate();
  auto scheme_end = config_.endpoint.find("://") + 3;
  auto slash = config_.endpoint.find('/', scheme_end);
  base_ = config_.endpoint.substr(0, slash);
  path_ = slash == std::string::npos ? "" : config_.endpoint.substr(slash);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/v1/chat/completions";
}

json OpenAiBackend::request_body(const std::vector<ChatMessage>& messages) const {
  json body;
  body["model"] = config_.model;
  body["messages"] = json::array();
  for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  body["temperature"] = config_.temperature;
  if (config_.seed) body["seed"] = *config_.seed;
  return body;
}

ChatReply OpenAiBackend::complete(const AgentRequest&, const std::vector<ChatMessage>& messages) {
  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) {
      throw AgentError(AgentError::Kind::Unavailable, "environment variable " + config_.api_key_env + " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(config_.timeout_seconds));
  httplib::Client client(base_);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  std::string body = request_body(messages).dump(-1, ' ', false, json::error_handler_t::replace);
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(std::min(4000, 100 << std::min(attempt, 6))));
    }
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw AgentError(AgentError::Kind::Unavailable, "HTTP " + std::to_string(res->status) + " from " + base_ + path_);
    }
    try {
      json j = json::parse(res->body);
      return ChatReply{j.at("choices").at(0).at("message").at("content").get<std::string>(), attempt};
    } catch (const json::exception& e) {
      throw AgentError(AgentError::Kind::Malformed, std::string("unexpected completion payload: ") + e.what());
    }
  }
  throw AgentError(AgentError::Kind::Unavailable,
                   last_error + " after " + std::to_string(config_.max_retries) + " retries");
}

}  // namespace eslrv::agents
