#include <gtest/gtest.h>

#include "eslrv/agents/parse.hpp"

using namespace eslrv::agents;
using eslrv::logic::Truth;

TEST(AgentParse, FencedBlock) {
  auto j = extract_json_block("Sure.\n```json\n{\"objects\": [\"Alex\"]}\n```\nDone.");
  EXPECT_EQ(j["objects"][0], "Alex");
  EXPECT_EQ(extract_json_block("```\n{\"a\": 1}\n```")["a"], 1);
  EXPECT_EQ(extract_json_block("  {\"a\": 2}  ")["a"], 2);
}

TEST(AgentParse, RejectsOtherFencesAndProse) {
  EXPECT_THROW(extract_json_block("```python\n{}\n```"), ParseFailure);
  EXPECT_THROW(extract_json_block("I think the answer is yes."), ParseFailure);
  EXPECT_THROW(extract_json_block("```json\n{not json\n```"), ParseFailure);
}

TEST(AgentParse, Objects) {
  EXPECT_EQ(parse_objects_reply("```json\n{\"objects\": [\"15.2\", 15.12, \"Alex\"]}\n```"),
            (std::vector<std::string>{"15.2", "15.12", "Alex"}));
  EXPECT_THROW(parse_objects_reply("{\"objects\": \"Alex\"}"), ParseFailure);
  EXPECT_THROW(parse_objects_reply("{\"objects\": [], \"extra\": 1}"), ParseFailure);
}

TEST(AgentParse, Facts) {
  auto facts = parse_facts_reply(
      "{\"facts\": [{\"predicate\": \"IsGreater\", \"args\": [\"15.2\", 15.12], \"truth\": \"true\"}]}");
  ASSERT_EQ(facts.size(), 1u);
  EXPECT_EQ(facts[0], (RawFact{"IsGreater", {"15.2", "15.12"}, Truth::True}));
  EXPECT_THROW(parse_facts_reply("{\"facts\": [{\"predicate\": \"P\", \"args\": [], \"truth\": \"maybe\"}]}"),
               ParseFailure);
  EXPECT_THROW(parse_facts_reply("{\"facts\": [{\"predicate\": \"P\", \"args\": []}]}"), ParseFailure);
}

TEST(AgentParse, Witness) {
  auto w = parse_witness_reply("{\"witness\": {\"z\": 10}}");
  ASSERT_TRUE(w);
  EXPECT_EQ(w->at("z"), "10");
  EXPECT_FALSE(parse_witness_reply("{\"witness\": null}"));
  EXPECT_THROW(parse_witness_reply("{\"witness\": 10}"), ParseFailure);
}

TEST(AgentParse, Answers) {
  EXPECT_EQ(parse_answer_reply("FALSE"), Truth::False);
  EXPECT_EQ(parse_answer_reply(" true.\n"), Truth::True);
  EXPECT_EQ(parse_answer_reply("Unknown"), Truth::Unknown);
  EXPECT_EQ(parse_answer_reply("```json\n{\"answer\": \"FALSE\"}\n```"), Truth::False);
  EXPECT_THROW(parse_answer_reply("maybe?"), ParseFailure);
}

TEST(AgentParse, Judgement) {
  EXPECT_TRUE(parse_judgement_reply("{\"violation\": true}"));
  EXPECT_FALSE(parse_judgement_reply("{\"violation\": false}"));
  EXPECT_THROW(parse_judgement_reply("{\"violation\": \"yes\"}"), ParseFailure);
}
