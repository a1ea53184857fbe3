#include <gtest/gtest.h>

#include "mproot/errors.hpp"
#include "mproot/expr.hpp"
#include "mproot/suite.hpp"
#include "test_support.hpp"

namespace mproot {
namespace {

using testing::close;
using testing::uniform;

const Precision k100(100);

BigReal at(std::string_view text, std::string_view x) { return eval(parse(text), make(x, k100)); }

TEST(Parse, ArithmeticAndPrecedence) {
  EXPECT_EQ(at("1+2*3", "0"), 7);
  EXPECT_EQ(at("(1+2)*3", "0"), 9);
  EXPECT_EQ(at("2^3^2", "0"), 512);
  EXPECT_EQ(at("-2^2", "0"), -4);
  EXPECT_EQ(at("2^-1", "0"), make("0.5", k100));
  EXPECT_EQ(at("x/2/2", "8"), 2);
  EXPECT_EQ(at("x-1-1", "5"), 3);
  EXPECT_EQ(at("-x*3", "2"), -6);
}

TEST(Parse, NumbersAndConstants) {
  EXPECT_EQ(at("1.5e2", "0"), 150);
  EXPECT_EQ(at("2.5E-1*4", "0"), 1);
  EXPECT_TRUE(close(at("pi", "0"), pi(k100), make("1e-99", k100)));
  EXPECT_TRUE(close(at("e", "0"), euler_e(k100), make("1e-99", k100)));
  // An exponent needs digits; there is no implicit multiplication.
  EXPECT_TRUE(close(at("2*e", "0"), 2 * euler_e(k100), make("1e-99", k100)));
  EXPECT_THROW(parse("2e"), SyntaxError);
}

TEST(Parse, WhitespaceIsIgnored) { EXPECT_EQ(parse(" cos ( x ) -  x "), parse("cos(x)-x")); }

TEST(Parse, SyntaxErrorCarriesOffset) {
  try {
    parse("cos(x-");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 6u);
  }
  try {
    parse("1+*2");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(parse(""), SyntaxError);
  EXPECT_THROW(parse("x)"), SyntaxError);
  EXPECT_THROW(parse("sin x"), SyntaxError);
}

TEST(Parse, UnknownIdentifierOffset) {
  try {
    parse("x+foo(x)");
    FAIL();
  } catch (const UnknownIdentifier& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(parse("y"), UnknownIdentifier);
}

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(parse("cos(x)-x")), simplify(parse("-sin(x)-1")));
  EXPECT_EQ(differentiate(parse("exp(x)+cos(x)")), simplify(parse("exp(x)-sin(x)")));
  EXPECT_EQ(differentiate(parse("sin(x)-x/100")), simplify(parse("cos(x)-1/100")));
  EXPECT_EQ(differentiate(parse("x")), simplify(parse("1")));
  EXPECT_EQ(differentiate(parse("7")), simplify(parse("0")));
}

TEST(Differentiate, OddRootIsIncreasing) {
  const auto f = DifferentiableFn::from_text("f", "x^(1/3)");
  EXPECT_TRUE(close(f.derivative(make("-8", k100)), BigReal(Rational(1, 12), k100), make("1e-98", k100)));
  EXPECT_TRUE(close(f.derivative(make("8", k100)), BigReal(Rational(1, 12), k100), make("1e-98", k100)));
}

TEST(Differentiate, AbsUsesSignForm) {
  const Expr d = differentiate(parse("abs(x^3)"));
  EXPECT_EQ(eval(d, make("-2", k100)), -12);
  EXPECT_EQ(eval(d, make("2", k100)), 12);
}

TEST(Eval, SuiteSpotValues) {
  EXPECT_TRUE(at(suite_expression(2, SuiteForm::kAsPrinted), "1").is_zero());
  EXPECT_TRUE(at(suite_expression(2, SuiteForm::kReconciled), "1").is_zero());
  EXPECT_TRUE(at(suite_expression(4, SuiteForm::kAsPrinted), "0").is_zero());
  EXPECT_TRUE(at(suite_expression(1, SuiteForm::kAsPrinted), "0").is_zero());
  const BigReal printed_f5 = at(suite_expression(5, SuiteForm::kAsPrinted), "-2");
  EXPECT_TRUE(close(printed_f5, BigReal(Rational(1, 34), k100), make("1e-95", k100)));
  const BigReal reconciled_f5 = at(suite_expression(5, SuiteForm::kReconciled), "-2");
  EXPECT_LT(abs(reconciled_f5), make("1e-95", k100));
}

TEST(Eval, DomainErrorsPropagate) {
  EXPECT_THROW(at("log(x)", "-1"), DomainError);
  EXPECT_THROW(at("sqrt(x)", "-1"), DomainError);
  EXPECT_THROW(at("1/x", "0"), DivisionByZero);
  EXPECT_THROW(at("x^(1/2)", "-4"), DomainError);
  EXPECT_THROW(at("x^y", "-4"), UnknownIdentifier);
  EXPECT_THROW(at("x^x", "-0.5"), DomainError);
  // Odd roots of negative numbers are real.
  EXPECT_EQ(at("x^(1/3)", "-8"), -2);
  EXPECT_EQ(at("x^(2/3)", "-8"), 4);
  EXPECT_EQ(at("x^3", "-2"), -8);
}

TEST(Suite, SevenFunctionsWithLabels) {
  const auto suite = builtin_suite();
  ASSERT_EQ(suite.size(), 7u);
  for (std::size_t i = 0; i < suite.size(); ++i) EXPECT_EQ(suite[i].label(), "f" + std::to_string(i + 1));
}

TEST(Suite, PrintedF5HasNoUsableRoot) {
  const auto printed = builtin_suite(SuiteForm::kAsPrinted);
  EXPECT_FALSE(printed[4].known_root(k100).has_value());
  EXPECT_NE(printed[4].note().find("not a root"), std::string::npos);
  const auto reconciled = builtin_suite(SuiteForm::kReconciled);
  ASSERT_TRUE(reconciled[4].known_root(k100).has_value());
  EXPECT_EQ(*reconciled[4].known_root(k100), -2);
}

TEST(Suite, ListedRootsAreRoots) {
  for (const auto& f : builtin_suite(SuiteForm::kReconciled)) {
    const auto r = f.known_root(k100);
    ASSERT_TRUE(r.has_value()) << f.label();
    // f6 and f7 list 15-17 digit roots.
    EXPECT_LT(abs(f(*r)), make("1e-14", k100)) << f.label();
  }
}

// Properties

TEST(Property, DerivativeMatchesCentralDifference) {
  const BigReal h = make("1e-30", k100);
  const BigReal tol = make("1e-25", k100);
  for (SuiteForm form : {SuiteForm::kAsPrinted, SuiteForm::kReconciled}) {
    for (const auto& f : builtin_suite(form)) {
      for (int i = 0; i < 20; ++i) {
        const BigReal x = uniform(0.25, 2.5, k100) * (i % 2 == 0 ? 1 : -1);
        const BigReal fd = (f(x + h) - f(x - h)) / (2 * h);
        EXPECT_TRUE(close(f.derivative(x), fd, tol)) << f.label() << " at " << x.to_string(20);
      }
    }
  }
}

TEST(Property, PrintParseRoundTrip) {
  const char* samples[] = {
      "x", "-x", "2^3^2", "(2^3)^2", "-2^2", "(-2)^2", "x-(x-1)", "x/(x/2)", "1/(3*x^4)-x^3-1/(3*x)+1",
      "sqrt(x^4+8)*sin(pi/(x^2+2))+x^3/(x^4+1)-sqrt(6)+8/17", "exp(sin(x))-1-x/5", "x^(1/3)", "x^(-2)",
      "-(x+1)", "abs(tan(x))*log(x)", "e^x", "x*-1",
  };
  for (const char* s : samples) {
    const Expr e = parse(s);
    const Expr back = parse(print(e));
    EXPECT_EQ(simplify(back), simplify(e)) << s << " -> " << print(e);
    const BigReal x = make("1.37", k100);
    EXPECT_TRUE(close(eval(back, x), eval(e, x), make("1e-95", k100))) << s;
  }
}

TEST(Property, SimplifyPreservesValue) {
  const char* samples[] = {"0+x*1", "x^1+0*sin(x)", "(x-0)/1", "2*3*x", "x^0", "--x", "(1/2+1/3)*x",
                           "x*(2^10)", "1/(3*x^4)-x^3-1/(3*x)+1", "x^4/3-x^2-x/3+1"};
  for (const char* s : samples) {
    const Expr e = parse(s);
    for (int i = 0; i < 10; ++i) {
      const BigReal x = uniform(0.5, 3.0, k100);
      EXPECT_TRUE(close(eval(simplify(e), x), eval(e, x), make("1e-95", k100))) << s;
    }
  }
}

}  // namespace
}  // namespace mproot
