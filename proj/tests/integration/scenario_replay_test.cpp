#include <gtest/gtest.h>

#include <filesystem>

#include "eslrv/esl/parser.hpp"
#include "eslrv/harness/runner.hpp"
#include "eslrv/verifier/verify.hpp"
#include "test_support.hpp"

using namespace eslrv;

namespace {

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(testkit::data_dir() / "scenarios")) {
    if (std::filesystem::exists(e.path() / "expected.json")) out.push_back(e.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string replay(const std::filesystem::path& dir, const std::filesystem::path& fixtures) {
  auto manifest = nlohmann::json::parse(testkit::slurp(dir / "case.json"));
  verifier::VerificationCase c;
  c.id = dir.filename().string();
  c.spec = esl::parse_spec(testkit::slurp(dir / manifest["spec"].get<std::string>()));
  c.context = testkit::slurp(dir / "context.txt");
  c.llm_output = testkit::slurp(dir / "output.txt");
  c.level = manifest["level"].get<int>();
  auto backend = agents::FixtureBackend::from_files({fixtures});
  agents::Agent perception(agents::Role::Perception, backend);
  agents::Agent target(agents::Role::Target, backend);
  return verifier::to_json(verifier::verify(c, perception, target), {false}).dump(2) + "\n";
}

}  // namespace

class ScenarioReplay : public ::testing::TestWithParam<std::string> {};

TEST_P(ScenarioReplay, MatchesExpectedReport) {
  auto dir = testkit::data_dir() / "scenarios" / GetParam();
  EXPECT_EQ(replay(dir, dir / "fixtures.jsonl"), testkit::slurp(dir / "expected.json"));
}

INSTANTIATE_TEST_SUITE_P(Data, ScenarioReplay, ::testing::ValuesIn(scenario_names()),
                         [](const auto& info) { return info.param; });

TEST(DatasetReplay, MetricsDatasetIsReproducible) {
  auto d = harness::load_dataset(testkit::data_dir() / "datasets" / "mrt_metrics" / "manifest.json");
  auto fixtures = std::make_shared<agents::FixtureBackend>(agents::FixtureBackend::from_files(d.fixtures));
  harness::AgentFactory factory = [&] { return harness::AgentPair{fixtures, fixtures}; };
  harness::RunOptions opts;
  opts.deterministic = true;
  auto serial = harness::rows_of(harness::run_dataset(d, factory, opts));
  opts.jobs = 4;
  auto parallel = harness::rows_of(harness::run_dataset(d, factory, opts));
  EXPECT_EQ(serial, parallel);
  auto s = harness::compute_metrics(serial);
  EXPECT_EQ(s.tpr_combined.hits, 7u);
  EXPECT_EQ(s.tpr_combined.total, 8u);
  EXPECT_EQ(s.tnr_combined.hits, 2u);
  EXPECT_EQ(s.tnr_combined.total, 2u);
  EXPECT_EQ(s.fail, 0u);
}
