#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "eslrv/harness/config.hpp"
#include "eslrv/harness/dataset.hpp"
#include "test_support.hpp"

using namespace eslrv;
using namespace eslrv::harness;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "eslrv_harness_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::filesystem::path write(const std::string& name, const std::string& text) {
  auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

EnvLookup env_of(std::map<std::string, std::string> vars) {
  return [vars](const std::string& k) -> std::optional<std::string> {
    auto it = vars.find(k);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
}

}  // namespace

TEST(Dataset, LoadsMetricsManifest) {
  Dataset d = load_dataset(testkit::data_dir() / "datasets" / "mrt_metrics" / "manifest.json");
  EXPECT_EQ(d.name, "mrt-gum-metrics");
  EXPECT_EQ(d.level, 1);
  EXPECT_EQ(d.rows.size(), 10u);
  ASSERT_EQ(d.fixtures.size(), 1u);
  EXPECT_TRUE(std::filesystem::exists(d.fixtures[0]));
  auto c = d.case_at(0);
  EXPECT_EQ(c.id, "alex");
  EXPECT_EQ(c.label, verifier::Label::Unsafe);
  EXPECT_EQ(c.spec.rules.size(), 1u);
}

TEST(Dataset, RowValidation) {
  auto bad = [](const std::string& text) {
    auto p = write("rows.jsonl", text);
    EXPECT_THROW(load_rows(p), DatasetError) << text;
  };
  bad(R"({"id": "a", "context": "", "llm_output": "", "label": "unsafe", "colour": "red"})");
  bad(R"({"id": "a", "context": "", "llm_output": "", "label": "dangerous"})");
  bad(R"({"id": "a", "context": "", "llm_output": "", "level": 3})");
  bad("{\"id\": \"a\", \"context\": \"\", \"llm_output\": \"\"}\n{\"id\": \"a\", \"context\": \"\", \"llm_output\": \"\"}");
  bad("not json");
  auto ok = write("rows.jsonl", "{\"id\": \"a\", \"context\": \"c\", \"llm_output\": \"o\", \"label\": \"correct\", "
                                "\"level\": 2, \"llm_flags_violation\": true}\n\n");
  auto rows = load_rows(ok);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].level, 2);
  EXPECT_EQ(rows[0].llm_flags_violation, true);
}

TEST(Dataset, MissingFilesAreReported) {
  auto m = write("manifest.json", R"({"name": "n", "spec": "nope.json", "level": 1, "cases": "nope.jsonl"})");
  EXPECT_THROW(load_dataset(m), DatasetError);
}

TEST(Config, DefaultsWithoutFile) {
  auto c = load_config(std::nullopt, env_of({}));
  EXPECT_EQ(c.jobs, 1u);
  EXPECT_EQ(c.perception.model, "gpt-4.1-nano");
  EXPECT_EQ(c.target.api_key_env, "OPENAI_API_KEY");
}

TEST(Config, FileAndEnvironment) {
  std::filesystem::create_directories(scratch("prompts"));
  auto p = write("eslrv.ini",
                 "jobs = 3\n"
                 "[perception]\n"
                 "model = \"gpt-4.1\"\n"
                 "seed = none\n"
                 "prompt_dir = prompts\n"
                 "[target]\n"
                 "endpoint = \"http://localhost:8000\"\n"
                 "api_key_env = \"\"\n"
                 "temperature = 0.5\n");
  auto c = load_config(p, env_of({{"ESLRV_TARGET_MODEL", "local-model"}, {"ESLRV_JOBS", "2"}}));
  EXPECT_EQ(c.jobs, 2u);
  EXPECT_EQ(c.perception.model, "gpt-4.1");
  EXPECT_FALSE(c.perception.seed);
  EXPECT_EQ(c.perception.prompt_dir, scratch("prompts"));
  EXPECT_EQ(c.target.endpoint, "http://localhost:8000");
  EXPECT_EQ(c.target.api_key_env, "");
  EXPECT_EQ(c.target.temperature, 0.5);
  EXPECT_EQ(c.target.model, "local-model");
}

TEST(Config, Errors) {
  EXPECT_THROW(load_config(write("a.ini", "[perception]\nmodle = x\n"), env_of({})), ConfigError);
  EXPECT_THROW(load_config(write("b.ini", "[judge]\nmodel = x\n"), env_of({})), ConfigError);
  EXPECT_THROW(load_config(write("c.ini", "[target]\ntemperature = hot\n"), env_of({})), ConfigError);
  EXPECT_THROW(load_config(write("d.ini", "[target]\ntemperature = 9\n"), env_of({})), ConfigError);
  EXPECT_THROW(load_config(std::nullopt, env_of({{"ESLRV_JOBS", "0"}})), ConfigError);
  EXPECT_THROW(load_config(scratch("missing.ini"), env_of({})), ConfigError);
}
