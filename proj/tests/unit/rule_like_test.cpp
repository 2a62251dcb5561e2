#include <gtest/gtest.h>

#include <algorithm>

#include "eslrv/logic/rule_like.hpp"
#include "test_support.hpp"

using namespace eslrv::logic;
using eslrv::testkit::impl;
using eslrv::testkit::lit;

TEST(RuleLike, DisjunctiveBodyConjunctiveHead) {
  GroundDeNF psi{{{lit("a1"), lit("b1")}, {lit("a2")}}, {{lit("c1"), lit("d1")}, {lit("c2")}}};
  std::vector<GroundImplication> expected{
      impl({"a1", "b1", "not d1"}, "c1"), impl({"a1", "b1", "not c1"}, "d1"), impl({"a1", "b1"}, "c2"),
      impl({"a2", "not d1"}, "c1"),       impl({"a2", "not c1"}, "d1"),       impl({"a2"}, "c2"),
  };
  canonicalize(expected);
  EXPECT_EQ(to_rule_like(psi), expected);
}

TEST(RuleLike, NegatedHeadsAndBodies) {
  GroundDeNF psi{{{lit("InRailway(Alex)")}}, {{lit("not ChewGum(Alex)")}}};
  auto out = to_rule_like(psi);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].to_string(), "InRailway(Alex) => not ChewGum(Alex)");
}

TEST(RuleLike, NegativeLiteralInDisjunctionIsComplemented) {
  GroundDeNF psi{{{lit("a")}}, {{lit("not b"), lit("c")}}};
  std::vector<GroundImplication> expected{impl({"a", "b"}, "c"), impl({"a", "not c"}, "not b")};
  canonicalize(expected);
  EXPECT_EQ(to_rule_like(psi), expected);
}

TEST(RuleLike, DuplicatesAcrossRulesCollapse) {
  GroundDeNF psi{{{lit("a")}}, {{lit("b")}}};
  std::vector<GroundDeNF> set{psi, psi};
  EXPECT_EQ(to_rule_like(set).size(), 1u);
}

TEST(RuleLike, BodyIsSortedAndDeduplicated) {
  GroundImplication r({lit("b"), lit("a"), lit("b")}, lit("c"));
  EXPECT_EQ(r.body.size(), 2u);
  EXPECT_EQ(r.to_string(), "a and b => c");
  EXPECT_EQ(r.body_label(), "a&b");
}
