#include "eslrv/agents/parse.hpp"

#include <algorithm>
#include <cctype>

namespace eslrv::agents {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseFailure(std::string("invalid JSON: ") + e.what());
  }
}

void expect_keys(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ParseFailure("expected a JSON object");
  for (const char* k : keys) {
    if (!j.contains(k)) throw ParseFailure(std::string("missing key \"") + k + "\"");
  }
  for (const auto& item : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; })) {
      throw ParseFailure("unexpected key \"" + item.key() + "\"");
    }
  }
}

std::string scalar_text(const json& v, const std::string& where) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (trim(s).empty()) throw ParseFailure(where + " is empty");
    return s;
  }
  if (v.is_number_integer() || v.is_number_unsigned() || v.is_number_float()) return v.dump();
  throw ParseFailure(where + " must be a string or number");
}

std::optional<logic::Truth> truth_token(std::string_view text) {
  std::string t = trim(text);
  while (!t.empty() && (t.back() == '.' || t.back() == '!')) t.pop_back();
  return logic::parse_truth(t);
}

}  // namespace

json extract_json_block(std::string_view reply) {
  std::string text(reply);
  auto open = text.find("```");
  if (open == std::string::npos) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '{') return parse_text(t);
    throw ParseFailure("no fenced JSON block");
  }
  auto body = text.find('\n', open);
  if (body == std::string::npos) throw ParseFailure("unterminated code fence");
  std::string tag = trim(std::string_view(text).substr(open + 3, body - open - 3));
  if (!tag.empty() && tag != "json") throw ParseFailure("code fence is tagged '" + tag + "', not json");
  auto close = text.find("```", body);
  if (close == std::string::npos) throw ParseFailure("unterminated code fence");
  return parse_text(text.substr(body + 1, close - body - 1));
}

std::vector<std::string> parse_objects_reply(std::string_view reply) {
  json j = extract_json_block(reply);
  expect_keys(j, {"objects"});
  if (!j["objects"].is_array()) throw ParseFailure("\"objects\" must be an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j["objects"].size(); ++i) {
    out.push_back(scalar_text(j["objects"][i], "objects[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<RawFact> parse_facts_reply(std::string_view reply) {
  json j = extract_json_block(reply);
  expect_keys(j, {"facts"});
  if (!j["facts"].is_array()) throw ParseFailure("\"facts\" must be an array");
  std::vector<RawFact> out;
  for (std::size_t i = 0; i < j["facts"].size(); ++i) {
    const json& f = j["facts"][i];
    std::string where = "facts[" + std::to_string(i) + "]";
    if (!f.is_object()) throw ParseFailure(where + " must be an object");
    expect_keys(f, {"predicate", "args", "truth"});
    if (!f["predicate"].is_string()) throw ParseFailure(where + ".predicate must be a string");
    if (!f["args"].is_array()) throw ParseFailure(where + ".args must be an array");
    if (!f["truth"].is_string()) throw ParseFailure(where + ".truth must be a string");
    RawFact fact;
    fact.predicate = f["predicate"].get<std::string>();
    for (std::size_t k = 0; k < f["args"].size(); ++k) {
      fact.args.push_back(scalar_text(f["args"][k], where + ".args[" + std::to_string(k) + "]"));
    }
    auto truth = logic::parse_truth(f["truth"].get<std::string>());
    if (!truth) throw ParseFailure(where + ".truth must be TRUE, FALSE or UNKNOWN");
    fact.truth = *truth;
    out.push_back(std::move(fact));
  }
  return out;
}

std::optional<std::map<std::string, std::string>> parse_witness_reply(std::string_view reply) {
  json j = extract_json_block(reply);
  expect_keys(j, {"witness"});
  const json& w = j["witness"];
  if (w.is_null()) return std::nullopt;
  if (!w.is_object()) throw ParseFailure("\"witness\" must be an object or null");
  std::map<std::string, std::string> out;
  for (const auto& item : w.items()) out.emplace(item.key(), scalar_text(item.value(), "witness." + item.key()));
  return out;
}

logic::Truth parse_answer_reply(std::string_view reply) {
  if (auto t = truth_token(reply)) return *t;
  json j = extract_json_block(reply);
  expect_keys(j, {"answer"});
  if (!j["answer"].is_string()) throw ParseFailure("\"answer\" must be a string");
  auto t = logic::parse_truth(j["answer"].get<std::string>());
  if (!t) throw ParseFailure("\"answer\" must be TRUE, FALSE or UNKNOWN");
  return *t;
}

bool parse_judgement_reply(std::string_view reply) {
  json j = extract_json_block(reply);
  expect_keys(j, {"violation"});
  if (!j["violation"].is_boolean()) throw ParseFailure("\"violation\" must be true or false");
  return j["violation"].get<bool>();
}

}  // namespace eslrv::agents
