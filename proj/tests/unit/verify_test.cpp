#include <gtest/gtest.h>

#include <random>

#include "eslrv/esl/parser.hpp"
#include "eslrv/verifier/verify.hpp"
#include "test_support.hpp"

using namespace eslrv;
using namespace eslrv::verifier;
using agents::Agent;
using agents::Role;
using agents::ScriptedBackend;

namespace {

esl::EslSpec load(const char* name) {
  return esl::parse_spec(testkit::slurp(testkit::data_dir() / "specs" / name));
}

interp::GroundAtom atom(const std::string& pred, std::vector<std::string> args) {
  interp::GroundAtom a{pred, {}};
  for (const auto& s : args) a.args.push_back(esl::Constant::from_text(s));
  return a;
}

struct Run {
  Verdict verdict;
  Trace trace;
};

Run run_scenario(const std::string& name, int level) {
  auto dir = testkit::data_dir() / "scenarios" / name;
  auto manifest = nlohmann::json::parse(testkit::slurp(dir / "case.json"));
  VerificationCase c;
  c.id = name;
  c.spec = esl::parse_spec(testkit::slurp(dir / manifest["spec"].get<std::string>()));
  c.context = testkit::slurp(dir / "context.txt");
  c.llm_output = testkit::slurp(dir / "output.txt");
  c.level = level;
  auto backend = ScriptedBackend::from_file(dir / "script.json");
  Agent perception(Role::Perception, backend);
  Agent target(Role::Target, backend);
  Run r;
  r.verdict = verify(c, perception, target, {}, &r.trace);
  return r;
}

}  // namespace

TEST(Verify, EmptySpecIsConsistent) {
  ScriptedBackend b({});
  Agent p(Role::Perception, b), t(Role::Target, b);
  VerificationCase c;
  c.spec = esl::parse_spec(R"({"Variables": [], "Predicates": [], "Rules": []})");
  c.context = "anything";
  auto v = verify(c, p, t);
  EXPECT_EQ(v.status, Status::Consistent);
  ASSERT_EQ(v.diagnostics.size(), 1u);
  EXPECT_EQ(v.diagnostics[0], "spec has no rules");
}

TEST(Verify, EmptyDiscourseIsConsistent) {
  ScriptedBackend b({});
  Agent p(Role::Perception, b), t(Role::Target, b);
  VerificationCase c;
  c.spec = load("mrt_gum.json");
  c.context = " \n";
  auto v = verify(c, p, t);
  EXPECT_EQ(v.status, Status::Consistent);
  EXPECT_EQ(v.diagnostics.at(0), "zero objects: the domain of discourse is empty");
}

TEST(Verify, AgentOutageIsFail) {
  ScriptedBackend b({});
  Agent p(Role::Perception, b), t(Role::Target, b);
  VerificationCase c;
  c.spec = load("mrt_gum.json");
  c.context = "Alex chews gum on the train.";
  auto v = verify(c, p, t);
  EXPECT_EQ(v.status, Status::Fail);
  EXPECT_EQ(v.reason.rfind("AgentUnavailable", 0), 0u) << v.reason;
  EXPECT_EQ(to_json(v, {false})["reason"], v.reason);
}

TEST(Verify, InvalidLevelIsFail) {
  ScriptedBackend b({});
  Agent p(Role::Perception, b), t(Role::Target, b);
  VerificationCase c;
  c.spec = load("mrt_gum.json");
  c.level = 3;
  EXPECT_EQ(verify(c, p, t).status, Status::Fail);
}

TEST(Verify, FollowUpPolarity) {
  auto pos = logic::positive(logic::PropositionId("P(a)"));
  auto neg = logic::negative(logic::PropositionId("P(a)"));
  EXPECT_EQ(check_followup(pos, logic::Truth::True), FollowUpResult::Consistent);
  EXPECT_EQ(check_followup(pos, logic::Truth::False), FollowUpResult::Inconsistent);
  EXPECT_EQ(check_followup(neg, logic::Truth::True), FollowUpResult::Inconsistent);
  EXPECT_EQ(check_followup(neg, logic::Truth::False), FollowUpResult::Consistent);
  EXPECT_EQ(check_followup(pos, logic::Truth::Unknown), FollowUpResult::Inconclusive);
  EXPECT_EQ(check_followup(neg, logic::Truth::Unknown), FollowUpResult::Inconclusive);
}

TEST(Verify, QueryRendering) {
  EXPECT_EQ(render_query(atom("IsGreater", {"152", "151.2"}), load("numeric_compare.json")),
            "Is 152 greater than 151.2?");
  EXPECT_EQ(render_query(atom("Permitted", {"Cara"}), load("mrt_animals.json")),
            "Is it true that a person Cara holds written permission from the operator to bring an animal?");
  EXPECT_THROW(render_query(atom("Nope", {"a"}), load("mrt_gum.json")), UnrenderableLiteral);
}

TEST(Verify, NumericCaseLevelTwo) {
  auto r = run_scenario("numeric_seeded", 2);
  EXPECT_EQ(r.verdict.status, Status::Inconsistent);
  EXPECT_EQ(r.verdict.stage, Stage::FollowUp);
  ASSERT_TRUE(r.verdict.evidence);
  EXPECT_EQ(r.verdict.evidence->conflict, "IsGreater(152,151.2)");
  EXPECT_EQ(r.verdict.evidence->question, "Is 152 greater than 151.2?");
  ASSERT_EQ(r.trace.chaining->derived.size(), 1u);
  ASSERT_EQ(r.trace.followups.size(), 1u);
}

TEST(Verify, NumericCaseLevelOne) {
  auto r = run_scenario("numeric_seeded", 1);
  EXPECT_EQ(r.verdict.status, Status::Consistent);
  EXPECT_TRUE(r.trace.interpretation->rules.empty());
}

TEST(Verify, MrtInternalConflict) {
  auto r = run_scenario("mrt_gum_alex", 1);
  EXPECT_EQ(r.verdict.status, Status::Inconsistent);
  EXPECT_EQ(r.verdict.stage, Stage::Internal);
  EXPECT_EQ(r.verdict.evidence->conflict, "ChewGum(Alex)");
  EXPECT_EQ(r.verdict.evidence->chain, (std::vector<std::string>{"InRailway(Alex) => not ChewGum(Alex)"}));
  EXPECT_TRUE(r.trace.followups.empty());
}

TEST(Verify, ReportIsStable) {
  auto a = to_json(run_scenario("mrt_animals_cara", 1).verdict, {false}).dump(2);
  auto b = to_json(run_scenario("mrt_animals_cara", 1).verdict, {false}).dump(2);
  EXPECT_EQ(a, b);
  auto j = nlohmann::json::parse(a);
  for (const char* key : {"status", "stage", "evidence", "reason", "diagnostics", "timings"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Verify, DescribeMentionsStages) {
  auto r = run_scenario("numeric_seeded", 2);
  std::string text = describe(r.trace);
  EXPECT_NE(text.find("IsGreater(152,151.2)"), std::string::npos);
}

TEST(VerifyProperty, PerceivingATrueWorldNeverYieldsInternalConflict) {
  auto spec = esl::parse_spec(R"js({
    "Variables": ["x", "y"],
    "Predicates": ["A(x) := x is active", "B(x, y) := x feeds y", "C(x) := x is charged", "D(x) := x is dormant"],
    "Rules": ["A(x) and B(x, y) => C(y)", "A(x) => not D(x)", "C(x) and not D(x) => A(x) or B(x, x)"]
  })js");
  std::mt19937_64 rng(99);
  const std::vector<std::string> names{"n0", "n1", "n2", "n3"};
  for (int round = 0; round < 150; ++round) {
    // A world that satisfies every rule: pick A and B freely, close C, then
    // choose D and repair the third rule. The repair edge B(x,x) has an
    // inactive source, so C stays closed.
    std::bernoulli_distribution coin(0.4);
    std::map<std::string, bool> world;
    for (const auto& x : names) world["A(" + x + ")"] = coin(rng);
    for (const auto& x : names) {
      for (const auto& y : names) world["B(" + x + "," + y + ")"] = coin(rng);
    }
    for (const auto& y : names) {
      bool c = coin(rng);
      for (const auto& x : names) c = c || (world["A(" + x + ")"] && world["B(" + x + "," + y + ")"]);
      world["C(" + y + ")"] = c;
    }
    for (const auto& x : names) {
      world["D(" + x + ")"] = !world["A(" + x + ")"] && coin(rng);
      if (world["C(" + x + ")"] && !world["D(" + x + ")"] && !world["A(" + x + ")"]) {
        world["B(" + x + "," + x + ")"] = true;
      }
    }
    nlohmann::json facts = nlohmann::json::array();
    std::uniform_int_distribution<int> view(0, 2);
    for (const auto& [id, value] : world) {
      int v = view(rng);
      if (v == 2) continue;
      auto open = id.find('(');
      std::string args = id.substr(open + 1, id.size() - open - 2);
      nlohmann::json arr = nlohmann::json::array();
      for (std::size_t s = 0, e; s <= args.size(); s = e + 1) {
        e = args.find(',', s);
        if (e == std::string::npos) e = args.size();
        arr.push_back(args.substr(s, e - s));
      }
      facts.push_back({{"predicate", id.substr(0, open)}, {"args", arr}, {"truth", v == 0 ? (value ? "TRUE" : "FALSE") : "UNKNOWN"}});
    }
    std::vector<ScriptedBackend::Rule> rules{
        {agents::RequestKind::ExtractObjects, std::nullopt, {}, nlohmann::json{{"objects", names}}.dump()},
        {agents::RequestKind::Propositionalize, std::nullopt, {}, nlohmann::json{{"facts", facts}}.dump()},
        {agents::RequestKind::AnswerQuery, std::nullopt, {}, "UNKNOWN"}};
    ScriptedBackend b(rules);
    Agent p(Role::Perception, b), t(Role::Target, b);
    VerificationCase c;
    c.spec = spec;
    c.context = "network";
    c.level = 1;
    auto v = verify(c, p, t);
    ASSERT_NE(v.status, Status::Fail) << v.reason;
    ASSERT_NE(v.status, Status::Inconsistent) << round << " " << to_json(v, {false}).dump();
  }
}
