#include <doctest.h>

#include <functional>
#include <random>
#include <sstream>

#include "fuzzyhorn/parser.hpp"
#include "fuzzyhorn/semantics.hpp"

using namespace fuzzyhorn;

namespace {

TruthValue tv(long long p, long long q) { return TruthValue(p, q); }

// One-element Lukasiewicz structure: P1(c)=1, P2(c)=9/10, P3(c)=1/2.
FuzzyStructure luka_example(Signature& sig) {
  sig = Signature();
  sig.add_predicate("P1", 1);
  sig.add_predicate("P2", 1);
  sig.add_predicate("P3", 1);
  sig.add_constant("c");
  FuzzyStructure M;
  M.algebra = lukasiewicz();
  M.sig = sig;
  M.domain = {"m"};
  M.funcs["c"][{}] = 0;
  M.preds["P1"][{0}] = TruthValue(1);
  M.preds["P2"][{0}] = tv(9, 10);
  M.preds["P3"][{0}] = tv(1, 2);
  return M;
}

}  // namespace

TEST_CASE("term evaluation") {
  Signature sig;
  sig.add_constant("c");
  sig.add_function("f", 1);
  sig.add_predicate("P", 1);
  FuzzyStructure M;
  M.algebra = boolean2();
  M.sig = sig;
  M.domain = {"a", "b"};
  M.funcs["c"][{}] = 0;
  M.funcs["f"][{0}] = 1;
  M.funcs["f"][{1}] = 0;
  M.preds["P"][{0}] = TruthValue(1);
  M.preds["P"][{1}] = TruthValue(0);

  VarEvaluation v = {{"x", 1}};
  CHECK(eval_term(M, {}, Term::app("f", {Term::app("c")})) == 1);
  CHECK(eval_term(M, v, Term::app("f", {Term::var("x")})) == 0);
  CHECK_THROWS_AS(eval_term(M, {}, Term::var("z")), SemanticsError);

  SUBCASE("partial function table yields nullopt and UnknownAtDepth") {
    M.funcs["f"].erase({1});
    M.partial = true;
    CHECK_FALSE(eval_term(M, v, Term::app("f", {Term::var("x")})).has_value());
    TruthOutcome o = eval_formula(M, v, parse_formula("P(f(x))", sig));
    CHECK(o.kind == TruthOutcome::Kind::UnknownAtDepth);
  }
}

TEST_CASE("connective evaluation in lukasiewicz") {
  Signature sig;
  FuzzyStructure M = luka_example(sig);
  auto val = [&](const std::string& s) {
    TruthOutcome o = eval_sentence(M, parse_formula(s, sig));
    REQUIRE(o.is_value());
    return o.value;
  };
  CHECK(val("P1(c) & P2(c) -> P3(c)") == tv(3, 5));
  CHECK(val("P2(c) & P3(c)") == tv(2, 5));
  CHECK(val("P2(c) /\\ P3(c)") == tv(1, 2));
  CHECK(val("P2(c) \\/ P3(c)") == tv(9, 10));
  CHECK(val("~P2(c)") == tv(1, 10));
  CHECK(val("top & P2(c)") == tv(9, 10));
  CHECK(val("bot -> P3(c)") == TruthValue(1));
  CHECK(val("P2(c) <-> P3(c)") == tv(3, 5));
}

TEST_CASE("quantifiers as inf/sup") {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_predicate("Q", 1);
  FuzzyStructure M;
  M.algebra = lukasiewicz();
  M.sig = sig;
  M.domain = {"d1", "d2"};
  M.preds["P"][{0}] = tv(1, 2);
  M.preds["P"][{1}] = TruthValue(1);
  M.preds["Q"][{0}] = TruthValue(1);
  M.preds["Q"][{1}] = tv(1, 2);

  auto val = [&](const std::string& s) {
    return eval_sentence(M, parse_formula(s, sig)).value;
  };
  CHECK(val("forall x. P(x)") == tv(1, 2));
  CHECK(val("exists x. P(x)") == TruthValue(1));
  // The strong conjunction of the two universal statements lies strictly
  // below the universal of the conjunction.
  CHECK(val("(forall x. P(x)) & (forall x. Q(x))") == TruthValue(0));
  CHECK(val("forall x. (P(x) & Q(x))") == tv(1, 2));
}

TEST_CASE("godel negation example") {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_constant("cbar");
  FuzzyStructure M;
  M.algebra = godel();
  M.sig = sig;
  M.domain = {"m"};
  M.funcs["cbar"][{}] = 0;
  M.preds["P"][{0}] = tv(4, 5);

  CHECK(eval_sentence(M, parse_formula("~(P(cbar) -> bot)", sig)).value ==
        TruthValue(1));
  CHECK(eval_sentence(M, parse_formula("P(cbar) -> bot", sig)).value ==
        TruthValue(0));
  CHECK(eval_sentence(M, parse_formula("P(cbar)", sig)).value == tv(4, 5));
}

TEST_CASE("equality as identity") {
  Signature sig;
  sig.add_constant("a");
  sig.add_constant("b");
  sig.enable_equality();
  FuzzyStructure M;
  M.algebra = boolean2();
  M.sig = sig;
  M.domain = {"e0", "e1"};
  M.funcs["a"][{}] = 0;
  M.funcs["b"][{}] = 1;
  M.equality_is_identity = true;

  CHECK(eval_sentence(M, parse_formula("a == a", sig)).value == TruthValue(1));
  CHECK(eval_sentence(M, parse_formula("a == b", sig)).value == TruthValue(0));
}

TEST_CASE("boolean2 evaluation agrees with a classical evaluator (property)") {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_predicate("Q", 2);
  sig.add_constant("c");

  std::mt19937 rng(1123);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> shape(0, 7);

  // Independent classical reference over bool.
  std::function<bool(const FuzzyStructure&, std::map<std::string, int>&, const Formula&)>
      classical = [&](const FuzzyStructure& M, std::map<std::string, int>& env,
                      const Formula& f) -> bool {
    switch (f.kind) {
      case Formula::Kind::Bot: return false;
      case Formula::Kind::Top: return true;
      case Formula::Kind::Atom: {
        std::vector<int> args;
        for (const Term& t : f.args)
          args.push_back(t.is_var() ? env.at(t.name) : M.funcs.at(t.name).at({}));
        return M.preds.at(f.pred).at(args) == TruthValue(1);
      }
      case Formula::Kind::Binary: {
        bool l = classical(M, env, f.sub[0]), r = classical(M, env, f.sub[1]);
        switch (f.conn) {
          case Connective::Strong:
          case Connective::Weak: return l && r;
          case Connective::Or: return l || r;
          case Connective::Implies: return !l || r;
        }
        return false;
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        auto saved = env.find(f.bound_var) != env.end()
                         ? std::optional<int>(env[f.bound_var])
                         : std::nullopt;
        bool universal = f.kind == Formula::Kind::Forall;
        bool result = universal;
        for (int d = 0; d < static_cast<int>(M.domain.size()); ++d) {
          env[f.bound_var] = d;
          bool ok = classical(M, env, f.sub[0]);
          if (universal ? !ok : ok) {
            result = !universal;
            break;
          }
        }
        if (saved)
          env[f.bound_var] = *saved;
        else
          env.erase(f.bound_var);
        return result;
      }
      default: return false;
    }
  };

  std::function<Formula(int)> gen = [&](int d) -> Formula {
    int s = d == 0 ? bit(rng) : shape(rng);
    switch (s) {
      case 0: return Formula::atom("P", {Term::var("x")});
      case 1: return Formula::atom("Q", {Term::var("y"), Term::app("c")});
      case 2: return Formula::binary(Connective::Strong, gen(d - 1), gen(d - 1));
      case 3: return Formula::binary(Connective::Weak, gen(d - 1), gen(d - 1));
      case 4: return Formula::binary(Connective::Or, gen(d - 1), gen(d - 1));
      case 5: return Formula::binary(Connective::Implies, gen(d - 1), gen(d - 1));
      case 6: return Formula::forall("x", gen(d - 1));
      default: return Formula::exists("y", gen(d - 1));
    }
  };

  for (int trial = 0; trial < 150; ++trial) {
    FuzzyStructure M;
    M.algebra = boolean2();
    M.sig = sig;
    M.domain = {"a", "b", "c0"};
    M.funcs["c"][{}] = 0;
    for (int i = 0; i < 3; ++i) {
      M.preds["P"][{i}] = TruthValue(bit(rng));
      for (int j = 0; j < 3; ++j) M.preds["Q"][{i, j}] = TruthValue(bit(rng));
    }
    Formula f = gen(3);
    std::map<std::string, int> env = {{"x", 0}, {"y", 1}};
    VarEvaluation v = {{"x", 0}, {"y", 1}};
    TruthOutcome o = eval_formula(M, v, f);
    REQUIRE(o.is_value());
    CHECK((o.value == TruthValue(1)) == classical(M, env, f));
  }
}

TEST_CASE("is_model") {
  Signature sig;
  FuzzyStructure M = luka_example(sig);
  Formula good = parse_formula("P2(c) -> P1(c)", sig);
  Formula bad = parse_formula("P1(c) -> P3(c)", sig);
  Formula open_good = parse_formula("P1(x)", sig);

  CHECK(is_model(M, {good, open_good}).yes());
  ModelCheckResult r = is_model(M, {good, bad});
  CHECK(r.verdict == ModelCheckResult::Verdict::No);
  REQUIRE(r.witness_formula.has_value());
  CHECK(*r.witness_formula == bad);
  CHECK(r.witness_value.value == tv(1, 2));
}

TEST_CASE("structure file round trip") {
  Signature sig;
  FuzzyStructure M = luka_example(sig);
  std::ostringstream out;
  write_structure(out, M);
  std::istringstream in(out.str());
  FuzzyStructure N = parse_structure(in);
  CHECK(N.domain == M.domain);
  CHECK(N.preds == M.preds);
  CHECK(N.funcs == M.funcs);
  CHECK(N.algebra->name() == M.algebra->name());

  Formula phi = parse_formula("P1(c) & P2(c) -> P3(c)", sig);
  CHECK(eval_sentence(N, phi).value == tv(3, 5));
}

TEST_CASE("structure parse errors") {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_structure(in), SemanticsError);
  };
  bad("domain a b\n");  // no algebra
  bad("algebra godel\ndomain a\npred P = (zzz)->1\n");  // unknown element
  bad("algebra godel\ndomain a\npred P = (a)->3/2\n");  // value outside [0,1]
  bad("algebra boolean2\ndomain a\npred P = (a)->1/2\n");  // not in carrier
}

TEST_CASE("validate rejects inconsistent structures") {
  Signature sig;
  FuzzyStructure M = luka_example(sig);
  CHECK_NOTHROW(M.validate());
  M.preds["P1"].erase(std::vector<int>{0});
  CHECK_THROWS_AS(M.validate(), SemanticsError);
}
