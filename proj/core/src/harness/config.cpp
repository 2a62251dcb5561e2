#include "eslrv/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace eslrv::harness {

namespace pt = boost::property_tree;

std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (!v) return std::nullopt;
  return std::string(v);
}

namespace {

const std::set<std::string> kRoleKeys{"endpoint",    "model",       "api_key_env",     "temperature",
                                      "seed",        "max_retries", "timeout_seconds", "prompt_dir"};

std::string unquote(std::string v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a number, got '" + v + "'");
}

long long to_int(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    long long n = std::stoll(v, &used);
    if (used == v.size()) return n;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected an integer, got '" + v + "'");
}

void set_role_key(agents::AgentConfig& c, const std::string& key, const std::string& value, const std::string& where,
                  const std::filesystem::path& base) {
  if (key == "endpoint") c.endpoint = value;
  else if (key == "model") c.model = value;
  else if (key == "api_key_env") c.api_key_env = value;
  else if (key == "temperature") c.temperature = to_double(value, where);
  else if (key == "seed") c.seed = (value == "none" || value.empty()) ? std::nullopt : std::optional(to_int(value, where));
  else if (key == "max_retries") c.max_retries = static_cast<int>(to_int(value, where));
  else if (key == "timeout_seconds") c.timeout_seconds = to_double(value, where);
  else if (key == "prompt_dir") c.prompt_dir = base.empty() ? std::filesystem::path(value) : base / value;
}

}  // namespace

HarnessConfig load_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env) {
  HarnessConfig cfg;
  std::filesystem::path base;
  if (file) {
    pt::ptree tree;
    try {
      pt::read_ini(file->string(), tree);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError(e.what());
    }
    base = file->parent_path();
    for (const auto& [name, node] : tree) {
      if (node.empty()) {
        if (name != "jobs") throw ConfigError(file->string() + ": unknown key '" + name + "'");
        long long jobs = to_int(unquote(node.data()), "jobs");
        if (jobs < 1) throw ConfigError("jobs must be >= 1");
        cfg.jobs = static_cast<unsigned>(jobs);
        continue;
      }
      agents::AgentConfig* role = name == "perception" ? &cfg.perception : name == "target" ? &cfg.target : nullptr;
      if (!role) throw ConfigError(file->string() + ": unknown section [" + name + "]");
      for (const auto& [key, leaf] : node) {
        if (!kRoleKeys.count(key)) throw ConfigError(file->string() + ": unknown key '" + name + "." + key + "'");
        set_role_key(*role, key, unquote(leaf.data()), name + "." + key, base);
      }
    }
  }
  if (auto jobs = env("ESLRV_JOBS")) {
    long long n = to_int(*jobs, "ESLRV_JOBS");
    if (n < 1) throw ConfigError("ESLRV_JOBS must be >= 1");
    cfg.jobs = static_cast<unsigned>(n);
  }
  for (auto [section, role] : {std::pair{"perception", &cfg.perception}, std::pair{"target", &cfg.target}}) {
    for (const auto& key : kRoleKeys) {
      std::string var = "ESLRV_" + upper(section) + "_" + upper(key);
      if (auto v = env(var)) set_role_key(*role, key, *v, var, {});
    }
  }
  try {
    cfg.perception.validate();
    cfg.target.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace eslrv::harness
