#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>

#include "eslrv/agents/agent.hpp"
#include "eslrv/esl/parser.hpp"
#include "test_support.hpp"

using namespace eslrv;
using namespace eslrv::agents;

namespace {

class LambdaBackend : public ChatBackend {
 public:
  using Fn = std::function<std::string(const AgentRequest&, const std::vector<ChatMessage>&)>;
  explicit LambdaBackend(Fn fn) : fn_(std::move(fn)) {}
  ChatReply complete(const AgentRequest& r, const std::vector<ChatMessage>& m) override {
    requests.push_back(r);
    messages.push_back(m);
    return ChatReply{fn_(r, m), 0};
  }
  std::vector<AgentRequest> requests;
  std::vector<std::vector<ChatMessage>> messages;

 private:
  Fn fn_;
};

esl::EslSpec mrt() { return esl::parse_spec(testkit::slurp(testkit::data_dir() / "specs" / "mrt_gum.json")); }

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "eslrv_agent_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Agent, RepairOnceThenSucceed) {
  LambdaBackend b([](const AgentRequest& r, const std::vector<ChatMessage>&) {
    return r.repair_attempt == 0 ? std::string("maybe?") : std::string("TRUE");
  });
  Agent a(Role::Target, b);
  EXPECT_EQ(a.answer_query("Is 152 greater than 151.2?"), logic::Truth::True);
  ASSERT_EQ(b.requests.size(), 2u);
  const auto& repair = b.messages[1];
  ASSERT_GE(repair.size(), 4u);
  EXPECT_EQ(repair[repair.size() - 2].role, "assistant");
  EXPECT_EQ(repair[repair.size() - 2].content, "maybe?");
  EXPECT_NE(repair.back().content.find("could not be parsed"), std::string::npos);
}

TEST(Agent, SecondMalformedReplyRaises) {
  LambdaBackend b([](const AgentRequest&, const std::vector<ChatMessage>&) { return std::string("maybe?"); });
  Agent a(Role::Target, b);
  try {
    a.answer_query("Is it true that x?");
    FAIL();
  } catch (const AgentError& e) {
    EXPECT_EQ(e.kind(), AgentError::Kind::Malformed);
  }
  EXPECT_EQ(b.requests.size(), 2u);
}

TEST(Agent, ExtractFactsFiltersBadFacts) {
  LambdaBackend b([](const AgentRequest& r, const std::vector<ChatMessage>&) -> std::string {
    if (r.kind == RequestKind::ExtractObjects) return R"({"objects": ["Alex", "Alex", "Ben"]})";
    return R"({"facts": [
      {"predicate": "InRailway", "args": ["Alex"], "truth": "TRUE"},
      {"predicate": "InRailway", "args": ["Alex"], "truth": "FALSE"},
      {"predicate": "Smoke", "args": ["Alex"], "truth": "TRUE"},
      {"predicate": "ChewGum", "args": ["Alex", "Ben"], "truth": "TRUE"},
      {"predicate": "ChewGum", "args": ["Cara"], "truth": "TRUE"},
      {"predicate": "ChewGum", "args": ["Ben"], "truth": "UNKNOWN"}]})";
  });
  Agent a(Role::Perception, b);
  interp::DomainOfDiscourse d{"Alex is on the platform.", "", {}};
  auto p = a.extract_facts(mrt(), d);
  ASSERT_EQ(p.objects.size(), 2u);
  EXPECT_EQ(p.objects[1].id, "o2");
  ASSERT_EQ(p.facts.size(), 2u);
  EXPECT_EQ(p.facts[0].atom.id().text(), "InRailway(Alex)");
  EXPECT_EQ(p.facts[0].truth, logic::Truth::True);
  EXPECT_EQ(p.facts[1].truth, logic::Truth::Unknown);
  EXPECT_EQ(a.notes().size(), 4u);
}

TEST(Agent, NoObjectsSkipsPropositionalize) {
  LambdaBackend b([](const AgentRequest&, const std::vector<ChatMessage>&) { return std::string(R"({"objects": []})"); });
  Agent a(Role::Perception, b);
  auto p = a.extract_facts(mrt(), interp::DomainOfDiscourse{});
  EXPECT_TRUE(p.objects.empty());
  EXPECT_EQ(b.requests.size(), 1u);
}

TEST(Agent, InstantiateValidatesVariables) {
  LambdaBackend b([](const AgentRequest&, const std::vector<ChatMessage>&) {
    return std::string(R"({"witness": {"z": "10", "q": "1"}})");
  });
  Agent a(Role::Perception, b);
  std::vector<esl::Atom> constraints{esl::Atom{"IsGreater", {esl::Term::var("z"), esl::Term::number(0)}}};
  interp::DomainOfDiscourse d{"", "", {{"o1", "15.2"}}};
  EXPECT_THROW(a.instantiate(interp::Binding{{{"x", "o1"}}, interp::BindingKind::Partial}, constraints, d),
               AgentError);
  ASSERT_FALSE(b.requests.empty());
  EXPECT_EQ(b.requests[0].payload["unbound"], nlohmann::ordered_json::array({"z"}));
  EXPECT_EQ(b.requests[0].payload["binding"]["x"], "15.2");
}

TEST(Agent, TransportErrorIsUnavailable) {
  ScriptedBackend b({});
  Agent a(Role::Target, b);
  try {
    a.answer_query("Is it true that x?");
    FAIL();
  } catch (const AgentError& e) {
    EXPECT_EQ(e.kind(), AgentError::Kind::Unavailable);
  }
}

TEST(Backends, ScriptedMatchesKindRoleAndText) {
  auto script = nlohmann::json::parse(R"([
    {"kind": "AnswerQuery", "role": "perception", "response": "UNKNOWN"},
    {"kind": "AnswerQuery", "contains": ["152", "151.2"], "response": "FALSE"},
    {"kind": "AnswerQuery", "response": "TRUE"}
  ])");
  auto b = ScriptedBackend::from_json(script);
  Agent target(Role::Target, b);
  Agent perception(Role::Perception, b);
  EXPECT_EQ(target.answer_query("Is 152 greater than 151.2?"), logic::Truth::False);
  EXPECT_EQ(target.answer_query("Is 1 greater than 0?"), logic::Truth::True);
  EXPECT_EQ(perception.answer_query("Is 1 greater than 0?"), logic::Truth::Unknown);
}

TEST(Backends, RecordThenReplay) {
  auto path = temp_file("record.jsonl");
  auto scripted = std::make_shared<ScriptedBackend>(ScriptedBackend::from_json(
      nlohmann::json::parse(R"([{"kind": "AnswerQuery", "response": "FALSE"}])")));
  {
    auto writer = std::make_shared<FixtureWriter>(path);
    RecordingBackend rec(scripted, writer);
    Agent a(Role::Target, rec);
    EXPECT_EQ(a.answer_query("Is 152 greater than 151.2?"), logic::Truth::False);
  }
  auto entries = load_fixtures(path);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].request_kind, "AnswerQuery");
  auto replay = FixtureBackend::from_files({path});
  Agent a(Role::Target, replay);
  EXPECT_EQ(a.answer_query("Is 152 greater than 151.2?"), logic::Truth::False);
  EXPECT_THROW(a.answer_query("Is 151.2 greater than 152?"), AgentError);
}

TEST(Requests, HashIgnoresPromptsButNotContent) {
  AgentRequest r;
  r.kind = RequestKind::AnswerQuery;
  r.role = Role::Target;
  r.payload = {{"question", "Is 152 greater than 151.2?"}};
  AgentRequest same = r;
  EXPECT_EQ(r.hash(), same.hash());
  EXPECT_EQ(r.hash().size(), 64u);
  same.repair_attempt = 1;
  EXPECT_NE(r.hash(), same.hash());
  AgentRequest other = r;
  other.role = Role::Perception;
  EXPECT_NE(r.hash(), other.hash());
}

TEST(Requests, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Prompts, ShippedFilesMatchBuiltins) {
  PromptSet builtin = PromptSet::builtin();
  for (auto k : {RequestKind::ExtractObjects, RequestKind::Propositionalize, RequestKind::Instantiate,
                 RequestKind::AnswerQuery, RequestKind::JudgeViolation}) {
    auto text = testkit::slurp(std::filesystem::path(ESLRV_PROMPTS_DIR) / (PromptSet::file_stem(k) + ".txt"));
    EXPECT_EQ(text, PromptSet::to_file_text(builtin.get(k))) << PromptSet::file_stem(k);
  }
  EXPECT_EQ(testkit::slurp(std::filesystem::path(ESLRV_PROMPTS_DIR) / "repair.txt"), builtin.repair());
}

TEST(Prompts, DirectoryOverrides) {
  auto dir = temp_file("prompts");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "answer_query.txt") << "Answer tersely.\n---\nQ: {{payload}}";
  PromptSet p = PromptSet::from_directory(dir);
  AgentRequest r;
  r.kind = RequestKind::AnswerQuery;
  r.payload = {{"question", "Is 1 greater than 0?"}};
  auto msgs = p.render(r);
  ASSERT_EQ(msgs.size(), 2u);
  EXPECT_EQ(msgs[0].content, "Answer tersely.");
  EXPECT_EQ(msgs[1].content, "Q: Is 1 greater than 0?");
  EXPECT_EQ(p.get(RequestKind::Instantiate).system, PromptSet::builtin().get(RequestKind::Instantiate).system);
}

TEST(Config, Validation) {
  AgentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.temperature = 3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = AgentConfig{};
  c.endpoint = "ftp://example.com";
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = AgentConfig{};
  c.timeout_seconds = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Requests, InvalidUtf8StillHashes) {
  AgentRequest r;
  r.context = "Alex \xff\xfe chews gum.";
  EXPECT_EQ(r.hash().size(), 64u);
  AgentRequest clean;
  clean.context = "Alex \xef\xbf\xbd\xef\xbf\xbd chews gum.";
  EXPECT_EQ(r.hash(), clean.hash());
}
