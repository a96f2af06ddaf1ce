#include "saten/formula.h"

#include <gtest/gtest.h>

#include "generators.h"
#include "saten/error.h"

namespace saten {
namespace {

ErrorKind KindOf(std::string_view text, const ParseOptions& o = {}) {
  try {
    Parse(text, o);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorKind::kNotFound;
}

TEST(FormulaParse, Negation) {
  EXPECT_EQ(Parse("-null"), Formula::Not(Formula::Proposition("null")));
}

TEST(FormulaParse, QuantifiedDisjunction) {
  Term x = Term::Variable("X");
  Formula expected = Formula::ForAll(
      "X", Formula::Or(Formula::Predicate("Psychopathic", {x}),
                       Formula::Predicate("Emotional", {x})));
  EXPECT_EQ(Parse("*X(Psychopathic(X)|Emotional(X))"), expected);
}

TEST(FormulaParse, Atom) { EXPECT_EQ(Parse("p"), Formula::Proposition("p")); }

TEST(FormulaParse, ExampleInputs) {
  for (const char* text :
       {"*X(Psychopathic(X)|Emotional(X))", "-null", "hopes&dreams",
        "*X(!Y(Mother(X,Y)))", "!Z(EatsChocolate(Z)->Happy(Z))",
        "*Y(-Income(Y)->-Loan(Y))",
        "*X(!Y(M(X,Y)))&*Y(D(mgm(ben),Y)->M(ben,Y)|A(ben,Y))"}) {
    Formula f = Parse(text);
    EXPECT_EQ(Parse(Print(f)), f) << text;
  }
}

TEST(FormulaParse, Precedence) {
  Formula a = Formula::Proposition("a");
  Formula b = Formula::Proposition("b");
  Formula c = Formula::Proposition("c");
  EXPECT_EQ(Parse("a&b|c"), Formula::Or(Formula::And(a, b), c));
  EXPECT_EQ(Parse("a|b&c"), Formula::Or(a, Formula::And(b, c)));
  EXPECT_EQ(Parse("a->b->c"), Formula::Implies(a, Formula::Implies(b, c)));
  EXPECT_EQ(Parse("a|b->c"), Formula::Implies(Formula::Or(a, b), c));
  EXPECT_EQ(Parse("-a&b"), Formula::And(Formula::Not(a), b));
  EXPECT_EQ(Parse("a&b&c"), Formula::And(Formula::And(a, b), c));
  EXPECT_EQ(Parse("((a))"), a);
}

TEST(FormulaParse, NegatedImplicationArrow) {
  Formula a = Formula::Proposition("a");
  EXPECT_EQ(Parse("a->-a"), Formula::Implies(a, Formula::Not(a)));
  EXPECT_EQ(Parse("--a"), Formula::Not(Formula::Not(a)));
}

TEST(FormulaParse, Errors) {
  EXPECT_EQ(KindOf("a__b"), ErrorKind::kReservedName);
  EXPECT_EQ(KindOf("a b"), ErrorKind::kWhitespace);
  EXPECT_EQ(KindOf("a&"), ErrorKind::kSyntax);
  EXPECT_EQ(KindOf("(a"), ErrorKind::kSyntax);
  EXPECT_EQ(KindOf("a)"), ErrorKind::kSyntax);
  EXPECT_EQ(KindOf(""), ErrorKind::kSyntax);
  EXPECT_EQ(KindOf("a#b"), ErrorKind::kSyntax);
  EXPECT_EQ(KindOf("P"), ErrorKind::kCase);
  EXPECT_EQ(KindOf("bird(X)", {.free_variables = FreeVariablePolicy::kKeep}),
            ErrorKind::kCase);
  EXPECT_EQ(KindOf("*x(P(x))"), ErrorKind::kCase);
  EXPECT_EQ(KindOf("P(MGM(ben))"), ErrorKind::kCase);
  EXPECT_EQ(KindOf("P(X)"), ErrorKind::kFreeVariable);
}

TEST(FormulaParse, ErrorPositions) {
  try {
    Parse("a&&b");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(FormulaParse, Trim) {
  EXPECT_EQ(Parse(" a -> b ", {.trim = true}), Parse("a->b"));
}

TEST(FormulaParse, UniversalClosure) {
  Formula f = Parse("P(X)", {.free_variables = FreeVariablePolicy::kUniversalClose});
  EXPECT_EQ(f, Parse("*X(P(X))"));
}

TEST(FormulaPrint, Canonical) {
  EXPECT_EQ(Print(Parse("-null")), "-null");
  EXPECT_EQ(Print(Parse("(a->b)")), "a->b");
  EXPECT_EQ(Print(Parse("(a|b)&c")), "(a|b)&c");
  EXPECT_EQ(Print(Parse("a&(b&c)")), "a&(b&c)");
  EXPECT_EQ(Print(Parse("(a->b)->c")), "(a->b)->c");
  EXPECT_EQ(Print(Parse("-(a&b)")), "-(a&b)");
  EXPECT_EQ(Print(Parse("*Y(-Income(Y)->-Loan(Y))")), "*Y(-Income(Y)->-Loan(Y))");
  EXPECT_EQ(Print(Parse("*X(P(X))")), "*X(P(X))");
}

TEST(FormulaPrint, RoundTripRandom) {
  gen::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Formula f = gen::FirstOrder(rng, 5);
    std::string text = Print(f);
    EXPECT_EQ(text.find(' '), std::string::npos);
    EXPECT_EQ(Parse(text), f) << text;
  }
}

TEST(FormulaFreeVariables, Cases) {
  ParseOptions keep{.free_variables = FreeVariablePolicy::kKeep};
  EXPECT_TRUE(FreeVariables(Parse("p")).empty());
  EXPECT_EQ(FreeVariables(Parse("M(X,Y)", keep)),
            (std::set<std::string>{"X", "Y"}));
  EXPECT_EQ(FreeVariables(Parse("*X(M(X,Y))", keep)),
            (std::set<std::string>{"Y"}));
  EXPECT_EQ(FreeVariables(Parse("P(f(X,Z))&!Z(Q(Z))", keep)),
            (std::set<std::string>{"X", "Z"}));
}

TEST(FormulaValue, EqualityAndOrdering) {
  Formula a = Parse("a->b");
  Formula b = Parse("(a->b)");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(Parse("a->b"), Parse("b->a"));
  EXPECT_TRUE((Parse("a") < Parse("b")) != (Parse("b") < Parse("a")));
}

TEST(FormulaValue, Complement) {
  EXPECT_EQ(Complement(Parse("-a")), Parse("a"));
  EXPECT_EQ(Complement(Parse("a&b")), Parse("-(a&b)"));
}

}  // namespace
}  // namespace saten
