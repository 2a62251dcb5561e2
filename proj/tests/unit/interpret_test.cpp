#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "eslrv/esl/parser.hpp"
#include "eslrv/interp/interpret.hpp"
#include "test_support.hpp"

using namespace eslrv;
using interp::DomainOfDiscourse;
using interp::PerceivedFact;

namespace {

esl::EslSpec load(const char* name) {
  return esl::parse_spec(testkit::slurp(testkit::data_dir() / "specs" / name));
}

PerceivedFact fact(const std::string& pred, std::vector<std::string> args, logic::Truth truth) {
  interp::GroundAtom atom{pred, {}};
  for (const auto& a : args) atom.args.push_back(esl::Constant::from_text(a));
  return PerceivedFact{atom, truth};
}

class FixedWitness : public interp::WitnessSource {
 public:
  enum class Mode { Answer, Refuse, Throw };
  explicit FixedWitness(Mode mode, std::string value = "10") : mode_(mode), value_(std::move(value)) {}

  std::optional<std::map<std::string, std::string>> instantiate(const interp::Binding&,
                                                                std::span<const esl::Atom> constraints,
                                                                const DomainOfDiscourse&) override {
    ++calls;
    if (mode_ == Mode::Throw) throw std::runtime_error("backend down");
    if (mode_ == Mode::Refuse) return std::nullopt;
    std::map<std::string, std::string> out;
    for (const auto& c : constraints) {
      std::vector<std::string> vars;
      c.collect_variables(vars);
      for (const auto& v : vars) out[v] = value_;
    }
    return out;
  }

  int calls = 0;

 private:
  Mode mode_;
  std::string value_;
};

struct NumericCase {
  esl::EslSpec spec = load("numeric_compare.json");
  DomainOfDiscourse d{"", "", {{"o1", "15.2"}, {"o2", "15.12"}}};
  std::vector<PerceivedFact> facts{fact("IsGreater", {"15.2", "15.12"}, logic::Truth::True),
                                   fact("IsGreater", {"15.12", "15.2"}, logic::Truth::False)};
};

std::optional<logic::Truth> truth_of(const interp::InterpretationResult& r, const std::string& id) {
  for (const auto& [p, t] : r.assignments) {
    if (p.text() == id) return t;
  }
  return std::nullopt;
}

}  // namespace

TEST(Interpret, LevelOneDropsPartialBindings) {
  NumericCase c;
  auto r = interp::interpret_level1(c.spec, c.d, c.facts);
  EXPECT_TRUE(r.rules.empty());
  EXPECT_EQ(std::count_if(r.diagnostics.begin(), r.diagnostics.end(),
                          [](const std::string& s) { return s.find("skipped at level 1") != std::string::npos; }),
            2);
}

TEST(Interpret, LevelTwoInstantiatesWitness) {
  NumericCase c;
  FixedWitness w(FixedWitness::Mode::Answer);
  auto r = interp::interpret_level2(c.spec, c.d, c.facts, w);
  ASSERT_EQ(r.rules.size(), 2u);
  EXPECT_EQ(r.rules[0].denf.to_string(), "IsGreater(15.2,15.12) and IsGreater(10,0) => IsGreater(152,151.2)");
  EXPECT_EQ(r.rules[1].denf.to_string(), "IsGreater(15.12,15.2) and IsGreater(10,0) => IsGreater(151.2,152)");
  ASSERT_EQ(r.synthesized.size(), 1u);
  EXPECT_EQ(r.synthesized[0].id, "o3");
  EXPECT_EQ(r.synthesized[0].text, "10");
  ASSERT_EQ(r.witness_facts.size(), 1u);
  EXPECT_EQ(truth_of(r, "IsGreater(10,0)"), logic::Truth::True);
  EXPECT_EQ(truth_of(r, "IsGreater(152,151.2)"), logic::Truth::Unknown);
  EXPECT_EQ(truth_of(r, "IsGreater(151.2,152)"), logic::Truth::Unknown);
  EXPECT_EQ(w.calls, 2);
}

TEST(Interpret, WitnessMatchingExistingObjectIsReused) {
  NumericCase c;
  FixedWitness w(FixedWitness::Mode::Answer, "15.20");
  auto r = interp::interpret_level2(c.spec, c.d, c.facts, w);
  EXPECT_TRUE(r.synthesized.empty());
  ASSERT_EQ(r.rules.size(), 2u);
  EXPECT_EQ(r.rules[0].binding.assignment.at("z"), "o1");
}

TEST(Interpret, RefusalIsDiagnosticOnly) {
  NumericCase c;
  FixedWitness w(FixedWitness::Mode::Refuse);
  auto r = interp::interpret_level2(c.spec, c.d, c.facts, w);
  EXPECT_TRUE(r.rules.empty());
  EXPECT_TRUE(std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                          [](const std::string& s) { return s.find("InstantiationRefused") != std::string::npos; }));
}

TEST(Interpret, AgentErrorFailsInterpretation) {
  NumericCase c;
  FixedWitness w(FixedWitness::Mode::Throw);
  EXPECT_THROW(interp::interpret_level2(c.spec, c.d, c.facts, w), interp::InterpretationFailure);
}

TEST(Interpret, NonNumericWitnessIsNotUsable) {
  NumericCase c;
  FixedWitness w(FixedWitness::Mode::Answer, "ten");
  auto r = interp::interpret_level2(c.spec, c.d, c.facts, w);
  EXPECT_TRUE(r.rules.empty());
  EXPECT_TRUE(std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                          [](const std::string& s) { return s.find("not grounded") != std::string::npos; }));
}

TEST(Interpret, MrtCompleteBindings) {
  auto spec = load("mrt_gum.json");
  DomainOfDiscourse d{"", "", {{"o1", "Alex"}, {"o2", "a stranger"}}};
  std::vector<PerceivedFact> facts{fact("InRailway", {"Alex"}, logic::Truth::True),
                                   fact("ChewGum", {"Alex"}, logic::Truth::True),
                                   fact("InRailway", {"a stranger"}, logic::Truth::Unknown)};
  auto r = interp::interpret_level1(spec, d, facts);
  ASSERT_EQ(r.rules.size(), 2u);
  EXPECT_EQ(r.rules[0].denf.to_string(), "InRailway(Alex) => not ChewGum(Alex)");
  EXPECT_EQ(truth_of(r, "ChewGum(a stranger)"), logic::Truth::Unknown);
}

TEST(Interpret, RulesWithoutMatchingFactsAreReported) {
  auto spec = load("mrt_gum.json");
  auto r = interp::interpret_level1(spec, DomainOfDiscourse{}, {});
  EXPECT_TRUE(r.rules.empty());
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_NE(r.diagnostics[0].find("no binding"), std::string::npos);
}

namespace {

class RandomWitness : public interp::WitnessSource {
 public:
  explicit RandomWitness(std::mt19937_64& rng) : rng_(rng) {}
  std::optional<std::map<std::string, std::string>> instantiate(const interp::Binding&,
                                                                std::span<const esl::Atom> constraints,
                                                                const DomainOfDiscourse&) override {
    if (std::bernoulli_distribution(0.2)(rng_)) return std::nullopt;
    std::map<std::string, std::string> out;
    std::uniform_int_distribution<int> pick(0, 4);
    for (const auto& c : constraints) {
      std::vector<std::string> vars;
      c.collect_variables(vars);
      for (const auto& v : vars) out.emplace(v, "w" + std::to_string(pick(rng_)));
    }
    return out;
  }

 private:
  std::mt19937_64& rng_;
};

}  // namespace

TEST(InterpretProperty, LevelTwoExtendsLevelOne) {
  auto spec = esl::parse_spec(R"js({
    "Variables": ["x", "y"],
    "Predicates": ["A(x) := x is a", "B(x, y) := x links y", "C(x) := x is c"],
    "Rules": ["A(x) and B(x, y) => C(y)", "A(x) => not C(x)", "B(x, y) or C(x) => A(y)"]
  })js");
  std::mt19937_64 rng(77);
  const std::vector<std::string> names{"w0", "w1", "w2", "w3"};
  const logic::Truth truths[] = {logic::Truth::True, logic::Truth::False, logic::Truth::Unknown};
  for (int round = 0; round < 200; ++round) {
    DomainOfDiscourse d;
    for (std::size_t i = 0; i < names.size(); ++i) d.objects.push_back({"o" + std::to_string(i + 1), names[i]});
    std::vector<PerceivedFact> facts;
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> truth(0, 2);
    int n = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int k = 0; k < n; ++k) {
      switch (pick(rng) % 3) {
        case 0: facts.push_back(fact("A", {names[pick(rng)]}, truths[truth(rng)])); break;
        case 1: facts.push_back(fact("B", {names[pick(rng)], names[pick(rng)]}, truths[truth(rng)])); break;
        default: facts.push_back(fact("C", {names[pick(rng)]}, truths[truth(rng)])); break;
      }
    }
    RandomWitness w(rng);
    auto l1 = interp::interpret_level1(spec, d, facts);
    auto l2 = interp::interpret_level2(spec, d, facts, w);
    for (const auto& r : l1.rules) {
      ASSERT_TRUE(std::any_of(l2.rules.begin(), l2.rules.end(), [&](const auto& o) { return o.denf == r.denf; }))
          << r.denf.to_string();
    }
    for (const auto& f : facts) {
      ASSERT_TRUE(truth_of(l2, f.atom.id().text()).has_value());
    }
  }
}
