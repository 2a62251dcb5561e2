#include <gtest/gtest.h>

#include "eslrv/esl/builtins.hpp"

using namespace eslrv::esl;

namespace {

Term n(const char* text) { return Term::constant(Constant::from_text(text)); }

std::string fold(const Term& t) { return eval_term(t).canonical(); }

EvalError::Kind fold_error(const Term& t) {
  try {
    eval_term(t);
  } catch (const EvalError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no EvalError for " << to_string(t);
  return EvalError::Kind::Arity;
}

}  // namespace

TEST(Builtins, Folding) {
  EXPECT_EQ(fold(Term::apply("Square", {Term::number(-3)})), "9");
  EXPECT_EQ(fold(Term::apply("Abs", {n("-2.5")})), "2.5");
  EXPECT_EQ(fold(Term::apply("-", {Term::number(4)})), "-4");
  EXPECT_EQ(fold(Term::apply("-", {Term::number(4), n("0.5")})), "3.5");
  EXPECT_EQ(fold(Term::apply("/", {Term::number(1), Term::number(8)})), "0.125");
  EXPECT_EQ(fold(Term::apply("*", {n("15.12"), Term::number(10)})), "151.2");
}

TEST(Builtins, Errors) {
  EXPECT_EQ(fold_error(Term::apply("/", {Term::number(1), Term::number(0)})), EvalError::Kind::DivisionByZero);
  EXPECT_EQ(fold_error(Term::apply("+", {Term::number(1), Term::var("x")})), EvalError::Kind::UnboundVariable);
  EXPECT_EQ(fold_error(Term::apply("+", {Term::number(1), Term::constant(Constant(std::string("Alex")))})),
            EvalError::Kind::NonNumericArg);
  EXPECT_EQ(fold_error(Term::apply("Cube", {Term::number(1)})), EvalError::Kind::UnknownFunction);
  EXPECT_EQ(fold_error(Term::apply("Square", {Term::number(1), Term::number(2)})), EvalError::Kind::Arity);
}

TEST(Builtins, StringsPassThrough) {
  EXPECT_EQ(eval_term(Term::constant(Constant(std::string("Alex")))), Constant(std::string("Alex")));
}

TEST(Builtins, SubstituteLeavesUnboundVariables) {
  Term t = Term::apply("*", {Term::var("x"), Term::var("z")});
  Term s = substitute(t, {{"x", Constant::from_text("15.2")}});
  EXPECT_FALSE(s.is_ground());
  EXPECT_EQ(to_string(s), "15.2 * z");
}

TEST(Builtins, CustomRegistry) {
  FunctionRegistry r = FunctionRegistry::builtin();
  r.add({"Twice", 1, 1, [](std::span<const eslrv::Number> a) { return a[0] + a[0]; }});
  EXPECT_EQ(eval_term(Term::apply("Twice", {Term::number(21)}), r).canonical(), "42");
}

TEST(Constants, CanonicalQuoting) {
  EXPECT_EQ(Constant(std::string("Alex")).canonical(), "Alex");
  EXPECT_EQ(Constant(std::string("10")).canonical(), "'10'");
  EXPECT_EQ(Constant(std::string("f(x)")).canonical(), "'f(x)'");
  EXPECT_EQ(Constant(std::string("x^2 - 5x + 6")).canonical(), "x^2 - 5x + 6");
  EXPECT_EQ(Constant::from_text("10").canonical(), "10");
}
