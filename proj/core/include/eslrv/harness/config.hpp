#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "eslrv/agents/backends.hpp"

namespace eslrv::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Agent wiring for both roles plus the batch job count.
struct HarnessConfig {
  agents::AgentConfig perception;
  agents::AgentConfig target;
  unsigned jobs = 1;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Process environment.
std::optional<std::string> process_env(const std::string& name);

/// Reads an INI/TOML-style file:
///
///     jobs = 4
///     [perception]
///     model = "gpt-4.1"
///     [target]
///     endpoint = "http://localhost:8000"
///
/// Keys per role: endpoint, model, api_key_env, temperature, seed (integer
/// or "none"), max_retries, timeout_seconds, prompt_dir. Relative
/// prompt_dir paths resolve against the file. Variables named
/// ESLRV_<SECTION>_<KEY> (ESLRV_JOBS for jobs) override file values.
HarnessConfig load_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env = process_env);

}  // namespace eslrv::harness
