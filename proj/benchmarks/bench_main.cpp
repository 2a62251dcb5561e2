#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <string>

#include "eslrv/esl/parser.hpp"
#include "eslrv/harness/dataset.hpp"
#include "eslrv/logic/forward_chain.hpp"
#include "eslrv/logic/rule_like.hpp"

using namespace eslrv;

namespace {

logic::PropositionId prop(std::size_t i) { return logic::PropositionId("P(" + std::to_string(i) + ")"); }

/// Layered implication set: every proposition of layer k+1 needs two of
/// layer k, so chaining touches every rule.
std::vector<logic::GroundImplication> layered(std::size_t width, std::size_t depth) {
  std::vector<logic::GroundImplication> rules;
  for (std::size_t k = 0; k + 1 < depth; ++k) {
    for (std::size_t i = 0; i < width; ++i) {
      auto a = prop(k * width + i);
      auto b = prop(k * width + (i + 1) % width);
      rules.emplace_back(std::vector<logic::GroundLiteral>{logic::positive(a), logic::positive(b)},
                         logic::positive(prop((k + 1) * width + i)));
    }
  }
  return rules;
}

void BM_ForwardChain(benchmark::State& state) {
  auto width = static_cast<std::size_t>(state.range(0));
  auto graph = logic::build_graph(layered(width, 10));
  logic::Assignments seeds;
  for (std::size_t i = 0; i < width; ++i) seeds.emplace_back(prop(i), logic::Truth::True);
  auto seeded = logic::seed_truth(graph, seeds);
  for (auto _ : state) benchmark::DoNotOptimize(logic::forward_chain(seeded));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(seeded.rules().size()));
}
BENCHMARK(BM_ForwardChain)->Arg(10)->Arg(100)->Arg(1000);

void BM_BuildGraph(benchmark::State& state) {
  auto rules = layered(static_cast<std::size_t>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(logic::build_graph(rules));
}
BENCHMARK(BM_BuildGraph)->Arg(100)->Arg(1000);

void BM_ToRuleLike(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  logic::GroundDeNF psi;
  for (std::size_t g = 0; g < n; ++g) {
    psi.lhs.push_back({logic::positive(prop(g)), logic::negative(prop(g + 100))});
    psi.rhs.push_back({logic::positive(prop(g + 200)), logic::positive(prop(g + 300)), logic::negative(prop(g + 400))});
  }
  for (auto _ : state) benchmark::DoNotOptimize(logic::to_rule_like(psi));
}
BENCHMARK(BM_ToRuleLike)->Arg(2)->Arg(8)->Arg(32);

void BM_ParseSpec(benchmark::State& state) {
  std::string text = harness::read_file(std::filesystem::path(ESLRV_DATA_DIR) / "specs" / "ineq_endpoints.json");
  for (auto _ : state) benchmark::DoNotOptimize(esl::parse_spec(text));
  state.SetBytesProcessed(state.iterations() * static_cast<long>(text.size()));
}
BENCHMARK(BM_ParseSpec);

void BM_ParseSpecNormalizing(benchmark::State& state) {
  std::string text = R"js({"Variables": ["x", "y"],
    "Predicates": ["A(x) := x is a", "B(x) := x is b", "C(x) := x is c", "D(x, y) := x meets y"],
    "Rules": ["not (A(x) and (B(x) or C(x))) => (D(x, y) and A(y)) or (B(y) and not C(y))"]})js";
  esl::ParseOptions opts;
  opts.normalize = true;
  for (auto _ : state) benchmark::DoNotOptimize(esl::parse_spec(text, opts));
}
BENCHMARK(BM_ParseSpecNormalizing);

}  // namespace
BENCHMARK_MAIN();
