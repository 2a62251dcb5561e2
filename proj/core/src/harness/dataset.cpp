#include "eslrv/harness/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eslrv/esl/parser.hpp"

namespace eslrv::harness {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

int parse_level(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw DatasetError(where + ": level must be 1 or 2");
  int level = j.get<int>();
  if (level != 1 && level != 2) throw DatasetError(where + ": level must be 1 or 2");
  return level;
}

}  // namespace

std::vector<DatasetRow> load_rows(const std::filesystem::path& jsonl) {
  std::istringstream in(read_file(jsonl));
  std::vector<DatasetRow> rows;
  std::set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where = jsonl.string() + ":" + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DatasetError(where + ": " + e.what());
    }
    if (!j.is_object()) throw DatasetError(where + ": expected an object");
    static const std::set<std::string> allowed{"id", "context", "llm_output", "label", "level", "llm_flags_violation"};
    for (const auto& item : j.items()) {
      if (!allowed.count(item.key())) throw DatasetError(where + ": unknown key \"" + item.key() + "\"");
    }
    DatasetRow r;
    try {
      r.id = j.at("id").get<std::string>();
      r.context = j.at("context").get<std::string>();
      r.llm_output = j.at("llm_output").get<std::string>();
      if (j.contains("label") && !j["label"].is_null()) {
        r.label = verifier::parse_label(j["label"].get<std::string>());
        if (!r.label) throw DatasetError(where + ": label must be safe, unsafe, correct or incorrect");
      }
      if (j.contains("level")) r.level = parse_level(j["level"], where);
      if (j.contains("llm_flags_violation") && !j["llm_flags_violation"].is_null()) {
        r.llm_flags_violation = j["llm_flags_violation"].get<bool>();
      }
    } catch (const json::exception& e) {
      throw DatasetError(where + ": " + e.what());
    }
    if (!ids.insert(r.id).second) throw DatasetError(where + ": duplicate id " + r.id);
    rows.push_back(std::move(r));
  }
  return rows;
}

Dataset load_dataset(const std::filesystem::path& manifest) {
  json j;
  try {
    j = json::parse(read_file(manifest));
  } catch (const json::exception& e) {
    throw DatasetError(manifest.string() + ": " + e.what());
  }
  auto dir = manifest.parent_path();
  Dataset d;
  try {
    d.name = j.at("name").get<std::string>();
    d.spec_path = dir / j.at("spec").get<std::string>();
    d.level = parse_level(j.at("level"), manifest.string());
    if (j.contains("fixtures")) {
      for (const auto& f : j["fixtures"]) d.fixtures.push_back(dir / f.get<std::string>());
    }
    if (j.contains("script")) d.script = dir / j["script"].get<std::string>();
    d.rows = load_rows(dir / j.at("cases").get<std::string>());
  } catch (const json::exception& e) {
    throw DatasetError(manifest.string() + ": " + e.what());
  }
  try {
    d.spec = esl::parse_spec(read_file(d.spec_path));
  } catch (const esl::SpecError& e) {
    throw DatasetError(d.spec_path.string() + ": " + e.what());
  }
  return d;
}

verifier::VerificationCase Dataset::case_at(std::size_t i) const {
  const DatasetRow& r = rows.at(i);
  return verifier::VerificationCase{r.id, spec, r.context, r.llm_output, r.level.value_or(level), r.label};
}

}  // namespace eslrv::harness
