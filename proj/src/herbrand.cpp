#include "fuzzyhorn/herbrand.hpp"

#include <algorithm>
#include <ostream>

namespace fuzzyhorn {

namespace {

bool term_order(const Term& a, const Term& b) {
  int da = a.depth(), db = b.depth();
  if (da != db) return da < db;
  return to_string(a) < to_string(b);
}

}  // namespace

HerbrandUniverse herbrand_universe(const Signature& sig, int depth) {
  if (sig.constants().empty())
    throw HerbrandError("Herbrand universe requires at least one constant");
  HerbrandUniverse u;
  u.depth = depth;
  bool has_proper_function = false;
  for (const auto& [name, arity] : sig.functions())
    if (arity > 0) has_proper_function = true;
  u.complete = !has_proper_function;

  for (const std::string& c : sig.constants()) u.terms.push_back(Term::app(c));
  for (int level = 1; level <= depth; ++level) {
    std::vector<Term> snapshot = u.terms;
    int n = static_cast<int>(snapshot.size());
    for (const auto& [fname, arity] : sig.functions()) {
      if (arity == 0) continue;
      std::vector<int> idx(arity, 0);
      while (true) {
        std::vector<Term> args;
        int maxd = 0;
        for (int i = 0; i < arity; ++i) {
          args.push_back(snapshot[idx[i]]);
          maxd = std::max(maxd, args.back().depth());
        }
        if (maxd + 1 == level) u.terms.push_back(Term::app(fname, args));
        int i = 0;
        for (; i < arity; ++i) {
          if (++idx[i] < n) break;
          idx[i] = 0;
        }
        if (i == arity) break;
      }
    }
  }
  std::sort(u.terms.begin(), u.terms.end(), term_order);
  u.terms.erase(std::unique(u.terms.begin(), u.terms.end()), u.terms.end());
  return u;
}

namespace {

// The shared scaffold: Boolean2, syntactic functions, == as identity.
HStructure base_structure(const Signature& sig, int depth) {
  HStructure h;
  h.universe = herbrand_universe(sig, depth);
  FuzzyStructure& M = h.structure;
  M.algebra = boolean2();
  M.sig = sig;
  M.equality_is_identity = true;

  std::map<Term, int> index;
  for (size_t i = 0; i < h.universe.terms.size(); ++i) {
    const Term& t = h.universe.terms[i];
    M.domain.push_back(to_string(t));
    index[t] = static_cast<int>(i);
  }

  for (const auto& [fname, arity] : sig.functions()) {
    auto& table = M.funcs[fname];
    if (arity == 0) {
      table[{}] = index.at(Term::app(fname));
      continue;
    }
    int n = static_cast<int>(h.universe.terms.size());
    std::vector<int> idx(arity, 0);
    while (true) {
      std::vector<Term> args;
      for (int i = 0; i < arity; ++i) args.push_back(h.universe.terms[idx[i]]);
      Term applied = Term::app(fname, args);
      auto it = index.find(applied);
      if (it != index.end()) {
        table[idx] = it->second;
      } else {
        M.partial = true;  // beyond the depth bound
      }
      int i = 0;
      for (; i < arity; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
      if (i == arity) break;
    }
  }

  // All predicates default to 0; atoms flip entries to 1.
  for (const auto& [pname, arity] : sig.predicates()) {
    if (pname == kEqualityPred) continue;
    auto& table = M.preds[pname];
    int n = static_cast<int>(h.universe.terms.size());
    std::vector<int> idx(arity, 0);
    while (true) {
      table[idx] = TruthValue(0);
      int i = 0;
      for (; i < arity; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
      if (i == arity) break;
      if (arity == 0) break;
    }
  }
  return h;
}

void check_atom(const Formula& atom, const Signature& sig) {
  if (atom.kind != Formula::Kind::Atom)
    throw HerbrandError("expected an atomic formula, got " + to_string(atom));
  if (atom.pred == kEqualityPred)
    throw HerbrandError("H-structures are equality-free; found " + to_string(atom));
  if (sig.predicate_arity(atom.pred) == 0)
    throw HerbrandError("0-ary predicate '" + atom.pred +
                        "' is not admitted in an H-structure atom set");
  for (const Term& t : atom.args)
    if (!t.is_ground())
      throw HerbrandError("non-ground atom " + to_string(atom));
}

}  // namespace

HStructure h_structure_from_atoms(const std::vector<Formula>& H,
                                  const Signature& sig, int depth) {
  HStructure h = base_structure(sig, depth);
  FuzzyStructure& M = h.structure;
  for (const Formula& atom : H) {
    check_atom(atom, sig);
    std::vector<int> idx;
    for (const Term& t : atom.args) {
      auto it = std::find(h.universe.terms.begin(), h.universe.terms.end(), t);
      if (it == h.universe.terms.end())
        throw HerbrandError("atom " + to_string(atom) +
                            " mentions a term outside the universe (depth " +
                            std::to_string(depth) + ")");
      idx.push_back(static_cast<int>(it - h.universe.terms.begin()));
    }
    M.preds[atom.pred][idx] = TruthValue(1);
    h.atoms.push_back(atom);
  }
  std::sort(h.atoms.begin(), h.atoms.end(),
            [](const Formula& a, const Formula& b) {
              return to_string(a) < to_string(b);
            });
  h.atoms.erase(std::unique(h.atoms.begin(), h.atoms.end()), h.atoms.end());
  return h;
}

HStructure h_structure_of_model(const FuzzyStructure& M, const Signature& sig,
                                int depth, bool allow_partial) {
  HerbrandUniverse u = herbrand_universe(sig, depth);
  std::vector<Formula> H;
  for (const auto& [pname, arity] : sig.predicates()) {
    if (pname == kEqualityPred || arity == 0) continue;
    int n = static_cast<int>(u.terms.size());
    std::vector<int> idx(arity, 0);
    while (true) {
      std::vector<Term> args;
      for (int i = 0; i < arity; ++i) args.push_back(u.terms[idx[i]]);
      Formula atom = Formula::atom(pname, args);
      TruthOutcome o = eval_sentence(M, atom);
      if (o.kind != TruthOutcome::Kind::Value) {
        if (!allow_partial)
          throw HerbrandError("evaluation of " + to_string(atom) +
                              " is not a definite value; pass allow_partial "
                              "to skip such atoms");
      } else if (o.value == M.algebra->top()) {
        H.push_back(std::move(atom));
      }
      int i = 0;
      for (; i < arity; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
      if (i == arity) break;
    }
  }
  return h_structure_from_atoms(H, sig, depth);
}

HStructure least_h_model(const std::vector<Formula>& Phi, const Signature& sig,
                         const SaturationConfig& config) {
  for (const Formula& phi : Phi) {
    HornClass hc = classify_horn(phi);
    if (!hc.is_any_horn_clause())
      throw HerbrandError("not a (w-)Horn clause: " + to_string(phi));
  }
  // Equality-free check on the input formulas.
  struct {
    void operator()(const Formula& f) {
      if (f.kind == Formula::Kind::Atom && f.pred == kEqualityPred)
        throw HerbrandError("least_h_model requires an equality-free theory");
      for (const Formula& s : f.sub) (*this)(s);
    }
  } reject_equality;
  for (const Formula& phi : Phi) reject_equality(phi);

  SaturationConfig ground = config;
  ground.frozen_vars = 0;  // Herbrand models are ground-only
  SaturationResult res = saturate(Phi, sig, ground);
  if (res.atoms.bottom_derived)
    throw HerbrandError("inconsistent theory: bottom derived");

  std::vector<Formula> H;
  for (const Atom& a : res.atoms.atoms()) {
    if (sig.predicate_arity(a.pred) == 0)
      throw HerbrandError("0-ary predicate '" + a.pred +
                          "' cannot appear in an H-model");
    std::vector<Term> args;
    for (int id : a.args) args.push_back(res.universe.terms()[id]);
    H.push_back(Formula::atom(a.pred, std::move(args)));
  }
  return h_structure_from_atoms(H, sig, config.depth);
}

void write_atom_set(std::ostream& out, const HStructure& h) {
  for (const Formula& atom : h.atoms) out << to_string(atom) << "\n";
}

}  // namespace fuzzyhorn
