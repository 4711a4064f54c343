#include <doctest.h>

#include <functional>
#include <random>
#include <sstream>

#include "fuzzyhorn/parser.hpp"

using namespace fuzzyhorn;

namespace {

Signature sig_pqr() {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_predicate("Q", 1);
  sig.add_predicate("R", 2);
  sig.add_predicate("T0", 0);
  sig.add_constant("c");
  sig.add_function("f", 1);
  sig.add_function("g", 2);
  sig.enable_equality();
  return sig;
}

}  // namespace

TEST_CASE("precedence and associativity") {
  Signature sig = sig_pqr();
  auto rt = [&](const std::string& s) { return to_string(parse_formula(s, sig)); };

  CHECK(rt("P(x) & Q(x) -> P(y)") == "P(x) & Q(x) -> P(y)");
  // -> is right associative.
  CHECK(rt("P(x) -> Q(x) -> P(y)") == "P(x) -> (Q(x) -> P(y))");
  // & binds tighter than /\ which binds tighter than \/.
  CHECK(rt("P(x) \\/ Q(x) /\\ P(y) & Q(y)") == "P(x) \\/ Q(x) /\\ P(y) & Q(y)");
  CHECK(parse_formula("P(x) \\/ (Q(x) /\\ (P(y) & Q(y)))", sig) ==
        parse_formula("P(x) \\/ Q(x) /\\ P(y) & Q(y)", sig));
  // A quantifier body extends as far right as possible.
  CHECK(parse_formula("forall x. P(x) -> Q(x)", sig) ==
        parse_formula("forall x. (P(x) -> Q(x))", sig));
}

TEST_CASE("normalization of sugar") {
  Signature sig = sig_pqr();
  CHECK(parse_formula("~P(c)", sig) == parse_formula("P(c) -> bot", sig));
  CHECK(parse_formula("P(c) <-> Q(c)", sig) ==
        parse_formula("(P(c) -> Q(c)) /\\ (Q(c) -> P(c))", sig));
  // The raw tree keeps the sugar.
  CHECK(parse_formula_raw("~P(c)", sig).kind == Formula::Kind::Not);
  CHECK(parse_formula_raw("P(c) <-> Q(c)", sig).kind == Formula::Kind::Iff);
}

TEST_CASE("unicode aliases") {
  Signature sig = sig_pqr();
  CHECK(parse_formula("∀x. (P(x) → Q(x))", sig) ==
        parse_formula("forall x. (P(x) -> Q(x))", sig));
  CHECK(parse_formula("∃x. P(x) ∧ Q(x)", sig) ==
        parse_formula("exists x. P(x) /\\ Q(x)", sig));
  CHECK(parse_formula("x ≈ y", sig) == parse_formula("x == y", sig));
  CHECK(parse_formula("¬P(c)", sig) == parse_formula("~P(c)", sig));
  CHECK(parse_formula("⊥ → ⊤", sig) == parse_formula("bot -> top", sig));
  CHECK(parse_formula("P(c) ↔ Q(c)", sig) == parse_formula("P(c) <-> Q(c)", sig));
}

TEST_CASE("terms, constants and variables") {
  Signature sig = sig_pqr();
  Formula f = parse_formula("R(f(c), g(x, f(y)))", sig);
  REQUIRE(f.kind == Formula::Kind::Atom);
  REQUIRE(f.args.size() == 2);
  CHECK(f.args[0] == Term::app("f", {Term::app("c")}));
  CHECK(f.args[1].is_var() == false);
  CHECK(f.args[1].args[0] == Term::var("x"));
  // 0-ary predicates are written bare.
  CHECK(parse_formula("T0 -> P(c)", sig).kind == Formula::Kind::Binary);
}

TEST_CASE("equality atoms") {
  Signature sig = sig_pqr();
  Formula f = parse_formula("f(x) == c", sig);
  REQUIRE(f.kind == Formula::Kind::Atom);
  CHECK(f.pred == kEqualityPred);
  REQUIRE(f.args.size() == 2);
  CHECK(f.args[1] == Term::app("c"));

  Signature no_eq;
  no_eq.add_constant("c");
  CHECK_THROWS_AS(parse_formula("x == c", no_eq), ParseError);
}

TEST_CASE("parse errors carry positions") {
  Signature sig = sig_pqr();
  auto expect_error = [&](const std::string& s) {
    try {
      parse_formula(s, sig);
      FAIL("expected ParseError for: ", s);
    } catch (const ParseError& e) {
      CHECK(e.position >= 0);
      CHECK(e.position <= static_cast<int>(s.size()));
    }
  };
  expect_error("P(x");
  expect_error("P(x) ->");
  expect_error("P(x, y)");        // arity mismatch
  expect_error("S(x)");           // undeclared predicate
  expect_error("P(h(x))");        // undeclared function
  expect_error("forall . P(x)");  // missing variable
  expect_error("P(x) Q(x)");      // trailing junk
  expect_error("");
}

TEST_CASE("print/parse round trip (property)") {
  Signature sig = sig_pqr();
  std::mt19937 rng(97);
  std::uniform_int_distribution<int> shape(0, 6);
  std::uniform_int_distribution<int> cdist(0, 3);

  // Random normalized formulas, depth-limited.
  std::function<Formula(int)> gen = [&](int d) -> Formula {
    int s = d == 0 ? 0 : shape(rng);
    switch (s) {
      case 0: {
        std::vector<Formula> leaves = {
            Formula::atom("P", {Term::var("x")}),
            Formula::atom("Q", {Term::app("c")}),
            Formula::atom("R", {Term::var("y"), Term::app("f", {Term::var("x")})}),
            Formula::atom(kEqualityPred, {Term::var("x"), Term::app("c")}),
            Formula::bot(),
            Formula::top(),
        };
        std::uniform_int_distribution<size_t> pick(0, leaves.size() - 1);
        return leaves[pick(rng)];
      }
      case 1:
      case 2:
      case 3: {
        Connective conns[] = {Connective::Strong, Connective::Weak,
                              Connective::Or, Connective::Implies};
        return Formula::binary(conns[cdist(rng)], gen(d - 1), gen(d - 1));
      }
      case 4:
        return Formula::forall("x", gen(d - 1));
      case 5:
        return Formula::exists("y", gen(d - 1));
      default:
        return Formula::forall("z", gen(d - 1));
    }
  };

  for (int i = 0; i < 300; ++i) {
    Formula f = gen(4);
    std::string printed = to_string(f);
    Formula reparsed = parse_formula(printed, sig);
    CHECK(reparsed == f);
    CHECK(to_string(reparsed) == printed);
  }
}

TEST_CASE("theory files") {
  std::string text =
      "# sample theory\n"
      "pred P/1\n"
      "pred Q/1\n"
      "const c\n"
      "fun f/1\n"
      "equality on\n"
      "\n"
      "P(c)\n"
      "forall x. (P(x) -> Q(f(x)))\n"
      "f(c) == c\n";
  Theory th = parse_theory_text(text);
  CHECK(th.sig.has_equality());
  CHECK(th.sig.function_arity("f") == 1);
  REQUIRE(th.formulas.size() == 3);
  CHECK(th.lines[0] == 8);
  CHECK(th.lines[2] == 10);
  CHECK(to_string(th.formulas[1]) == "forall x. P(x) -> Q(f(x))");

  SUBCASE("formula before header completes is an error") {
    CHECK_THROWS_AS(parse_theory_text("P(c)\npred P/1\n"), ParseError);
  }
  SUBCASE("error reports the source line") {
    try {
      parse_theory_text("pred P/1\nP(\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }
}
