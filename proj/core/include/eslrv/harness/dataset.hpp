#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eslrv/esl/ast.hpp"
#include "eslrv/verifier/verify.hpp"

namespace eslrv::harness {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DatasetRow {
  std::string id;
  std::string context;
  std::string llm_output;
  std::optional<verifier::Label> label;
  std::optional<int> level;
  /// Precomputed standalone verdict; when absent the target is asked.
  std::optional<bool> llm_flags_violation;
};

/// Manifest `{name, spec, level, cases, fixtures?, script?}`; paths are
/// relative to the manifest. `cases` is JSONL of
/// `{id, context, llm_output, label, level?, llm_flags_violation?}`.
struct Dataset {
  std::string name;
  std::filesystem::path spec_path;
  esl::EslSpec spec;
  int level = 2;
  std::vector<DatasetRow> rows;
  std::vector<std::filesystem::path> fixtures;
  std::optional<std::filesystem::path> script;

  verifier::VerificationCase case_at(std::size_t i) const;
};

Dataset load_dataset(const std::filesystem::path& manifest);
std::vector<DatasetRow> load_rows(const std::filesystem::path& jsonl);

std::string read_file(const std::filesystem::path& path);

}  // namespace eslrv::harness
