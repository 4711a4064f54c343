#include <doctest.h>

#include <random>

#include "fuzzyhorn/parser.hpp"
#include "fuzzyhorn/syntax.hpp"

using namespace fuzzyhorn;

namespace {

Signature basic_sig() {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_predicate("Q", 1);
  sig.add_predicate("R", 1);
  sig.add_predicate("P2", 2);
  sig.add_constant("c");
  sig.add_constant("d");
  sig.add_function("f", 1);
  sig.enable_equality();
  return sig;
}

}  // namespace

TEST_CASE("signature invariants") {
  Signature sig;
  sig.add_predicate("P", 1);
  CHECK_THROWS_AS(sig.add_function("P", 0), SignatureError);
  CHECK_THROWS_AS(sig.add_predicate("P", 2), SignatureError);
  sig.enable_equality();
  CHECK(sig.has_equality());
  CHECK(sig.predicate_arity(kEqualityPred) == 2);
}

TEST_CASE("ground terms and depth") {
  Term t = Term::app("f", {Term::app("c")});
  CHECK(t.is_ground());
  CHECK(t.depth() == 1);
  CHECK_FALSE(Term::var("x").is_ground());
  CHECK(Term::app("c").depth() == 0);
}

TEST_CASE("classification of basic shapes") {
  Signature sig = basic_sig();
  auto classify = [&](const std::string& s) {
    return classify_horn(parse_formula(s, sig));
  };

  SUBCASE("bare atom is basic on both tracks") {
    HornClass hc = classify("P(c)");
    CHECK(hc.strong == HornLevel::Basic);
    CHECK(hc.weak == HornLevel::Basic);
  }
  SUBCASE("strong-body implication") {
    HornClass hc = classify("P(x) & Q(x) -> R(x)");
    CHECK(hc.strong == HornLevel::Basic);
    CHECK(hc.weak == HornLevel::None);
  }
  SUBCASE("weak-body implication") {
    HornClass hc = classify("P(x) /\\ Q(x) -> R(x)");
    CHECK(hc.strong == HornLevel::None);
    CHECK(hc.weak == HornLevel::Basic);
  }
  SUBCASE("single implication is basic on both tracks") {
    HornClass hc = classify("P(x) -> Q(x)");
    CHECK(hc.strong == HornLevel::Basic);
    CHECK(hc.weak == HornLevel::Basic);
  }
  SUBCASE("existential prefix gives a Horn formula, not a clause") {
    HornClass hc = classify("exists x. (P(x) -> Q(x))");
    CHECK(hc.strong == HornLevel::Formula);
    CHECK_FALSE(hc.is_horn_clause());
  }
  SUBCASE("universal prefix gives a clause") {
    HornClass hc = classify("forall x. (P(x) -> Q(x))");
    CHECK(hc.strong == HornLevel::Clause);
    CHECK(hc.is_horn_clause());
  }
  SUBCASE("double negation of an atom is not Horn") {
    // ~(P(c) -> bot) normalizes to (P(c) -> bot) -> bot whose body is an
    // implication, not an atom.
    HornClass hc = classify("~(P(c) -> bot)");
    CHECK(hc.is_not_horn());
  }
  SUBCASE("disjunction is not Horn") {
    CHECK(classify("P(x) \\/ Q(x)").is_not_horn());
  }
  SUBCASE("bot may head a clause") {
    HornClass hc = classify("P(c) -> bot");
    CHECK(hc.strong == HornLevel::Basic);
  }
  SUBCASE("conjunction of basic Horn formulas") {
    HornClass hc = classify("(P(x) -> Q(x)) & (Q(x) -> R(x))");
    CHECK(hc.strong == HornLevel::QuantifierFree);
    CHECK(hc.weak == HornLevel::None);
  }
  SUBCASE("nested quantifier inside the matrix is not Horn") {
    CHECK(classify("P(c) & (forall x. Q(x))").is_not_horn());
  }
  SUBCASE("vacuous quantification is allowed") {
    HornClass hc = classify("forall x. forall y. (P(x) -> Q(x))");
    CHECK(hc.strong == HornLevel::Clause);
  }
}

TEST_CASE("classification is stable under variable renaming") {
  Signature sig = basic_sig();
  std::vector<std::string> shapes = {
      "forall x. (P(x) & Q(x) -> R(x))",
      "P(x) /\\ Q(x) -> R(x)",
      "exists x. (P(x) -> Q(x))",
      "P(x) \\/ Q(x)",
  };
  for (const auto& s : shapes) {
    Formula f = parse_formula(s, sig);
    Formula g = substitute(f, {{"x", Term::var("z")}});
    HornClass a = classify_horn(f), b = classify_horn(g);
    CHECK(a.strong == b.strong);
    CHECK(a.weak == b.weak);
  }
}

TEST_CASE("rank recursion") {
  Signature sig = basic_sig();
  CHECK(rank(parse_formula("P(c)", sig)) == 0);
  CHECK(rank(parse_formula("forall x. (P(x) & Q(x) -> R(x))", sig)) == 1);
  CHECK(rank(parse_formula("forall x. forall y. (P(x) -> Q(y))", sig)) == 2);
  // Negation counts on the raw tree.
  CHECK(rank(parse_formula_raw("~P(c)", sig)) == 1);
  // After normalization ~P(c) is P(c) -> bot with rank 0.
  CHECK(rank(parse_formula("~P(c)", sig)) == 0);
}

TEST_CASE("free variables") {
  Signature sig = basic_sig();
  CHECK(free_vars(parse_formula("P(x)", sig)) == std::set<std::string>{"x"});
  CHECK(free_vars(parse_formula("forall x. P(x)", sig)).empty());
  CHECK(free_vars(parse_formula("forall x. (P(x) -> Q(y))", sig)) ==
        std::set<std::string>{"y"});
}

TEST_CASE("substitution") {
  Signature sig = basic_sig();
  SUBCASE("simple instance") {
    Formula f = parse_formula("P(x) -> Q(x)", sig);
    Formula g = substitute(f, {{"x", Term::app("f", {Term::app("c")})}});
    CHECK(to_string(g) == "P(f(c)) -> Q(f(c))");
  }
  SUBCASE("capture-avoiding rename") {
    Formula f = parse_formula("forall y. (P(x) -> Q(y))", sig);
    Formula g = substitute(f, {{"x", Term::var("y")}});
    CHECK(to_string(g) == "forall y'. P(y) -> Q(y')");
  }
  SUBCASE("substituting a non-free variable is a no-op") {
    Formula f = parse_formula("forall x. P(x)", sig);
    Formula g = substitute(f, {{"x", Term::app("c")}});
    CHECK(f == g);
  }
}

namespace {

// Small random Horn clause generator over the basic signature: universal
// prefix over a strong conjunction of basic Horn formulas.
Formula random_horn_clause(std::mt19937& rng, const Signature& sig,
                           const std::vector<std::string>& vars) {
  auto pick = [&](const std::vector<std::string>& pool) {
    std::uniform_int_distribution<size_t> d(0, pool.size() - 1);
    return pool[d(rng)];
  };
  std::vector<std::string> preds = {"P", "Q", "R"};
  std::vector<std::string> terms = {"c", "d"};
  for (const auto& v : vars) terms.push_back(v);
  auto atom = [&]() {
    std::string t = pick(terms);
    Term arg = (t == "c" || t == "d") ? Term::app(t) : Term::var(t);
    return Formula::atom(pick(preds), {arg});
  };
  auto basic = [&]() {
    std::uniform_int_distribution<int> nbody(0, 2);
    int n = nbody(rng);
    if (n == 0) return atom();
    Formula body = atom();
    for (int i = 1; i < n; ++i)
      body = Formula::binary(Connective::Strong, std::move(body), atom());
    return Formula::binary(Connective::Implies, std::move(body), atom());
  };
  std::uniform_int_distribution<int> nconj(1, 2);
  int m = nconj(rng);
  Formula matrix = basic();
  for (int i = 1; i < m; ++i)
    matrix = Formula::binary(Connective::Strong, std::move(matrix), basic());
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    matrix = Formula::forall(*it, std::move(matrix));
  return matrix;
}

}  // namespace

TEST_CASE("substitution preserves Horn clauses and rank (property)") {
  Signature sig = basic_sig();
  std::mt19937 rng(20240817);
  std::vector<std::string> vars = {"x", "y"};
  std::vector<Term> candidates = {Term::app("c"), Term::app("d"),
                                  Term::app("f", {Term::app("c")}),
                                  Term::var("z")};
  for (int i = 0; i < 200; ++i) {
    Formula clause = random_horn_clause(rng, sig, {});
    // Open clause variant: strip nothing, substitute free variables.
    Formula open_clause = random_horn_clause(rng, sig, {});
    Substitution s;
    std::uniform_int_distribution<size_t> d(0, candidates.size() - 1);
    for (const auto& v : free_vars(open_clause)) s[v] = candidates[d(rng)];
    Formula instance = substitute(open_clause, s);
    CHECK(classify_horn(instance).is_horn_clause());
    CHECK(rank(instance) == rank(open_clause));
    CHECK(classify_horn(clause).is_horn_clause());
  }
}

TEST_CASE("similarity axioms") {
  SUBCASE("unary function generates C1") {
    Signature sig;
    sig.enable_equality();
    sig.add_function("f", 1);
    auto axioms = similarity_axioms(sig);
    REQUIRE(axioms.size() == 4);  // S1-S3 + C1(f)
    bool found = false;
    for (const auto& a : axioms)
      if (to_string(a) == "forall x1. forall y1. x1 == y1 -> f(x1) == f(y1)")
        found = true;
    CHECK(found);
  }
  SUBCASE("unary predicate generates C2 with a biconditional") {
    Signature sig;
    sig.enable_equality();
    sig.add_predicate("P", 1);
    auto axioms = similarity_axioms(sig);
    REQUIRE(axioms.size() == 4);
    bool found = false;
    for (const auto& a : axioms) {
      std::string s = to_string(a);
      if (s.find("P(x1)") != std::string::npos &&
          s.find("P(y1)") != std::string::npos)
        found = true;
    }
    CHECK(found);
  }
  SUBCASE("equality-only signature gives exactly S1-S3") {
    Signature sig;
    sig.enable_equality();
    CHECK(similarity_axioms(sig).size() == 3);
  }
  SUBCASE("requires equality") {
    Signature sig;
    sig.add_predicate("P", 1);
    CHECK_THROWS_AS(similarity_axioms(sig), SignatureError);
  }
}
