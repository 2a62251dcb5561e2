#include <gtest/gtest.h>

#include "eslrv/number.hpp"

using eslrv::Number;

namespace {

Number num(const char* text) {
  auto n = Number::parse(text);
  EXPECT_TRUE(n.has_value()) << text;
  return n.value_or(Number{});
}

}  // namespace

TEST(Number, DecimalArithmeticIsExact) {
  EXPECT_EQ((num("15.12") * num("10")).to_string(), "151.2");
  EXPECT_EQ((num("0.1") + num("0.2")).to_string(), "0.3");
  EXPECT_EQ((num("15.2") * num("10")).to_string(), "152");
}

TEST(Number, CanonicalRendering) {
  EXPECT_EQ(num("007").to_string(), "7");
  EXPECT_EQ(num("-0.50").to_string(), "-0.5");
  EXPECT_EQ(num("1e3").to_string(), "1000");
  EXPECT_EQ(num("25E-2").to_string(), "0.25");
  EXPECT_EQ((num("1") / num("3")).to_string(), "1/3");
  EXPECT_EQ(num("-0").to_string(), "0");
  EXPECT_EQ(num("0.08").to_string(), "0.08");
  EXPECT_EQ(num("0.0089").to_string(), "0.0089");
}

TEST(Number, RejectsMalformedText) {
  for (const char* bad : {"", " 1", "1 ", "1.", ".5", "+1", "1e", "1e99999", "0x10", "1..2", "--1"}) {
    EXPECT_FALSE(Number::parse(bad).has_value()) << bad;
  }
}

TEST(Number, Ordering) {
  EXPECT_LT(num("151.2"), num("152"));
  EXPECT_GT(num("-1"), num("-1.5"));
  EXPECT_EQ(num("2.50"), num("2.5"));
}
