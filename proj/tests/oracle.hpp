// Test-only reference implementation: naive ground forward chaining with
// equality treated as an ordinary predicate closed under reflexivity,
// symmetry, transitivity and both congruence schemes. Shares only the AST
// with the library; no engine code.
#ifndef FUZZYHORN_TESTS_ORACLE_HPP
#define FUZZYHORN_TESTS_ORACLE_HPP

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyhorn/syntax.hpp"

namespace fuzzyhorn::oracle {

using GroundAtom = std::pair<std::string, std::vector<Term>>;

struct OracleClosure {
  std::set<GroundAtom> atoms;  // == included
  bool bottom = false;

  bool has(const std::string& pred, const std::vector<Term>& args) const {
    return atoms.count({pred, args}) > 0;
  }
  bool has(const Formula& a) const { return has(a.pred, a.args); }
};

inline std::vector<Term> oracle_terms(const Signature& sig, int depth,
                                      int frozen) {
  std::vector<Term> terms;
  for (int i = 1; i <= frozen; ++i)
    terms.push_back(Term::var("v" + std::to_string(i)));
  for (const auto& c : sig.constants()) terms.push_back(Term::app(c));
  for (int d = 0; d < depth; ++d) {
    std::vector<Term> next = terms;
    for (const auto& [fn, arity] : sig.functions()) {
      if (arity == 0) continue;
      std::vector<int> idx(arity, 0);
      while (true) {
        std::vector<Term> args;
        for (int i = 0; i < arity; ++i) args.push_back(terms[idx[i]]);
        Term t = Term::app(fn, args);
        if (t.depth() <= depth &&
            std::find(next.begin(), next.end(), t) == next.end())
          next.push_back(t);
        int i = 0;
        for (; i < arity; ++i) {
          if (++idx[i] < static_cast<int>(terms.size())) break;
          idx[i] = 0;
        }
        if (i == arity) break;
      }
    }
    if (next.size() == terms.size()) break;
    terms = next;
  }
  return terms;
}

struct OracleRule {
  std::vector<Formula> body;  // atoms or truth constants
  Formula head;               // atom or Bot
  std::vector<std::string> vars;
};

inline void oracle_strip(const Formula& f, std::vector<Formula>& out) {
  if (f.kind == Formula::Kind::Binary &&
      (f.conn == Connective::Strong || f.conn == Connective::Weak)) {
    oracle_strip(f.sub[0], out);
    oracle_strip(f.sub[1], out);
  } else {
    out.push_back(f);
  }
}

inline std::vector<OracleRule> oracle_rules(const std::vector<Formula>& Phi) {
  std::vector<OracleRule> rules;
  for (const Formula& phi : Phi) {
    const Formula* m = &phi;
    while (m->kind == Formula::Kind::Forall) m = &m->sub[0];
    std::vector<Formula> conjuncts;
    oracle_strip(*m, conjuncts);
    for (const Formula& c : conjuncts) {
      OracleRule r;
      if (c.kind == Formula::Kind::Binary && c.conn == Connective::Implies) {
        oracle_strip(c.sub[0], r.body);
        r.head = c.sub[1];
      } else {
        r.head = c;
      }
      std::set<std::string> fv = free_vars(*m);
      r.vars.assign(fv.begin(), fv.end());
      rules.push_back(std::move(r));
    }
  }
  return rules;
}

/// Least fixpoint over the depth-bounded term list. Functions of arity
/// >= 2 are not supported by the congruence part.
inline OracleClosure oracle_saturate(const std::vector<Formula>& Phi,
                                     const Signature& sig, int depth,
                                     int frozen) {
  std::vector<Term> terms = oracle_terms(sig, depth, frozen);
  std::vector<OracleRule> rules = oracle_rules(Phi);

  if (sig.has_equality()) {
    for (const Term& t : terms) {
      OracleRule refl;
      refl.head = Formula::atom(kEqualityPred, {t, t});
      rules.push_back(refl);
    }
  }

  OracleClosure cl;
  auto in_universe = [&](const Term& t) {
    return std::find(terms.begin(), terms.end(), t) != terms.end();
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const OracleRule& r : rules) {
      int k = static_cast<int>(r.vars.size());
      std::vector<int> idx(k, 0);
      while (true) {
        Substitution s;
        for (int i = 0; i < k; ++i) s[r.vars[i]] = terms[idx[i]];
        bool body_ok = true, head_ok = true;
        for (const Formula& b : r.body) {
          if (b.kind == Formula::Kind::Top) continue;
          if (b.kind == Formula::Kind::Bot) { body_ok = body_ok && cl.bottom; continue; }
          Formula g = substitute(b, s);
          for (const Term& t : g.args)
            if (!in_universe(t)) { body_ok = false; head_ok = false; }
          if (body_ok && !cl.has(g)) body_ok = false;
        }
        if (body_ok && head_ok) {
          if (r.head.kind == Formula::Kind::Bot) {
            if (!cl.bottom) { cl.bottom = true; changed = true; }
          } else if (r.head.kind != Formula::Kind::Top) {
            Formula g = substitute(r.head, s);
            bool inside = true;
            for (const Term& t : g.args)
              if (!in_universe(t)) inside = false;
            if (inside && cl.atoms.insert({g.pred, g.args}).second)
              changed = true;
          }
        }
        int i = 0;
        for (; i < k; ++i) {
          if (++idx[i] < static_cast<int>(terms.size())) break;
          idx[i] = 0;
        }
        if (i == k) break;
        if (k == 0) break;
      }
    }
    if (!sig.has_equality()) continue;

    std::vector<std::pair<Term, Term>> eqs;
    for (const GroundAtom& a : cl.atoms)
      if (a.first == kEqualityPred) eqs.push_back({a.second[0], a.second[1]});
    // Symmetry, transitivity.
    for (const auto& [a, b] : eqs)
      if (cl.atoms.insert({kEqualityPred, {b, a}}).second) changed = true;
    for (const auto& [a, b] : eqs)
      for (const auto& [c, d] : eqs)
        if (b == c && cl.atoms.insert({kEqualityPred, {a, d}}).second)
          changed = true;
    // C1 for unary functions.
    for (const auto& [fn, arity] : sig.functions()) {
      if (arity != 1) continue;
      for (const auto& [a, b] : eqs) {
        Term fa = Term::app(fn, {a}), fb = Term::app(fn, {b});
        if (in_universe(fa) && in_universe(fb) &&
            cl.atoms.insert({kEqualityPred, {fa, fb}}).second)
          changed = true;
      }
    }
    // C2 for every predicate, argument position by argument position.
    std::vector<GroundAtom> snapshot(cl.atoms.begin(), cl.atoms.end());
    for (const GroundAtom& at : snapshot) {
      if (at.first == kEqualityPred) continue;
      for (size_t pos = 0; pos < at.second.size(); ++pos)
        for (const auto& [a, b] : eqs) {
          if (!(at.second[pos] == a)) continue;
          GroundAtom variant = at;
          variant.second[pos] = b;
          if (cl.atoms.insert(variant).second) changed = true;
        }
    }
  }
  return cl;
}

}  // namespace fuzzyhorn::oracle

#endif
