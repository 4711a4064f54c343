#include "fuzzyhorn/saturation.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

namespace fuzzyhorn {

// -- TermUniverse -----------------------------------------------------------

TermUniverse::TermUniverse(const Signature& sig, int depth, int frozen_vars)
    : sig_(sig), depth_(depth) {
  for (int i = 1; i <= frozen_vars; ++i)
    frozen_.push_back("v" + std::to_string(i));
  for (const std::string& v : frozen_) intern(Term::var(v));
  for (const std::string& c : sig.constants()) intern(Term::app(c));

  bool has_proper_function = false;
  for (const auto& [name, arity] : sig.functions())
    if (arity > 0) has_proper_function = true;
  complete_ = !has_proper_function;

  // Depth-stratified closure under function application.
  for (int level = 1; level <= depth_; ++level) {
    std::vector<Term> current = terms_;  // snapshot
    for (const auto& [fname, arity] : sig.functions()) {
      if (arity == 0) continue;
      // All argument tuples over terms of depth < level whose application
      // has depth exactly level (at least one argument of depth level-1).
      std::vector<int> idx(arity, 0);
      int n = static_cast<int>(current.size());
      if (n == 0) break;
      while (true) {
        std::vector<Term> args;
        args.reserve(arity);
        int maxd = 0;
        for (int i = 0; i < arity; ++i) {
          args.push_back(current[idx[i]]);
          maxd = std::max(maxd, args.back().depth());
        }
        if (maxd + 1 == level) intern(Term::app(fname, args));
        int i = 0;
        for (; i < arity; ++i) {
          if (++idx[i] < n) break;
          idx[i] = 0;
        }
        if (i == arity) break;
      }
    }
  }
}

int TermUniverse::intern(const Term& t) {
  auto it = index_.find(t);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(terms_.size());
  terms_.push_back(t);
  index_[t] = id;
  return id;
}

int TermUniverse::id_of(const Term& t) const {
  auto it = index_.find(t);
  return it == index_.end() ? -1 : it->second;
}

int TermUniverse::apply(const std::string& fn, const std::vector<int>& args) const {
  Term t = Term::app(fn);
  t.args.reserve(args.size());
  for (int a : args) t.args.push_back(terms_[a]);
  return id_of(t);
}

// -- CongruenceState --------------------------------------------------------

CongruenceState::CongruenceState(int num_terms) : parent_(num_terms) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int CongruenceState::find(int id) const {
  while (parent_[id] != id) {
    parent_[id] = parent_[parent_[id]];
    id = parent_[id];
  }
  return id;
}

namespace {

// Minimal by (depth, printed form): deterministic, readable representatives.
bool term_less(const Term& a, const Term& b) {
  int da = a.depth(), db = b.depth();
  if (da != db) return da < db;
  return to_string(a) < to_string(b);
}

}  // namespace

bool CongruenceState::merge(int a, int b, const TermUniverse& universe) {
  int ra = find(a), rb = find(b);
  if (ra == rb) return false;
  const auto& terms = universe.terms();
  if (term_less(terms[rb], terms[ra])) std::swap(ra, rb);
  parent_[rb] = ra;

  // Congruence propagation (C1): applications with pairwise equivalent
  // arguments collapse. Desk-scale quadratic pass to a local fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<std::string, std::vector<int>>, int> table;
    for (int id = 0; id < static_cast<int>(terms.size()); ++id) {
      const Term& t = terms[id];
      if (t.is_var() || t.args.empty()) continue;
      std::vector<int> argreps;
      argreps.reserve(t.args.size());
      for (const Term& arg : t.args) argreps.push_back(find(universe.id_of(arg)));
      auto key = std::make_pair(t.name, std::move(argreps));
      auto [it, inserted] = table.emplace(key, id);
      if (!inserted) {
        int r1 = find(it->second), r2 = find(id);
        if (r1 != r2) {
          if (term_less(terms[r2], terms[r1])) std::swap(r1, r2);
          parent_[r2] = r1;
          changed = true;
        }
      }
    }
  }
  return true;
}

std::vector<std::vector<int>> CongruenceState::classes() const {
  std::map<int, std::vector<int>> buckets;
  for (int id = 0; id < static_cast<int>(parent_.size()); ++id)
    buckets[find(id)].push_back(id);
  std::vector<std::vector<int>> out;
  for (auto& [rep, members] : buckets) out.push_back(std::move(members));
  return out;
}

// -- AtomBase ---------------------------------------------------------------

namespace {

Atom canonical(const Atom& atom, const CongruenceState& cc) {
  Atom out{atom.pred, atom.args};
  for (int& a : out.args) a = cc.find(a);
  return out;
}

}  // namespace

bool AtomBase::insert(const Atom& atom, const CongruenceState& cc) {
  return atoms_.insert(canonical(atom, cc)).second;
}

bool AtomBase::contains(const Atom& atom, const CongruenceState& cc) const {
  return atoms_.count(canonical(atom, cc)) != 0;
}

void AtomBase::rebuild(const CongruenceState& cc) {
  std::set<Atom> next;
  for (const Atom& a : atoms_) next.insert(canonical(a, cc));
  atoms_ = std::move(next);
}

// -- Clause compilation -----------------------------------------------------

namespace {

// A compiled basic Horn conjunct: body literals and one head.
struct Literal {
  enum class Kind { Atom, Equation, Bot, Top };
  Kind kind;
  std::string pred;
  std::vector<Term> args;  // Atom: predicate args; Equation: two terms
};

struct BasicRule {
  std::vector<Literal> body;
  Literal head;
  std::vector<std::string> vars;  // universally quantified, in prefix order
};

Literal literal_of(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Bot:
      return {Literal::Kind::Bot, "", {}};
    case Formula::Kind::Top:
      return {Literal::Kind::Top, "", {}};
    case Formula::Kind::Atom:
      if (f.pred == kEqualityPred)
        return {Literal::Kind::Equation, f.pred, f.args};
      return {Literal::Kind::Atom, f.pred, f.args};
    default:
      throw SaturationError("expected an atomic formula inside a Horn clause");
  }
}

void flatten_conn(const Formula& f, Connective c, std::vector<const Formula*>& out) {
  if (f.kind == Formula::Kind::Binary && f.conn == c) {
    flatten_conn(f.sub[0], c, out);
    flatten_conn(f.sub[1], c, out);
  } else {
    out.push_back(&f);
  }
}

// Splits a (w-)Horn clause into basic rules. The matrix conjunction (either
// track) splits into conjuncts; each conjunct contributes one rule.
std::vector<BasicRule> compile_clause(const Formula& clause, Connective track) {
  std::vector<std::string> vars;
  const Formula* body = &clause;
  while (body->kind == Formula::Kind::Forall) {
    vars.push_back(body->bound_var);
    body = &body->sub[0];
  }
  std::vector<const Formula*> conjuncts;
  flatten_conn(*body, track, conjuncts);
  std::vector<BasicRule> rules;
  for (const Formula* conj : conjuncts) {
    BasicRule rule;
    rule.vars = vars;
    if (conj->kind == Formula::Kind::Binary &&
        conj->conn == Connective::Implies) {
      std::vector<const Formula*> parts;
      flatten_conn(conj->sub[0], track, parts);
      for (const Formula* p : parts) rule.body.push_back(literal_of(*p));
      rule.head = literal_of(conj->sub[1]);
    } else {
      rule.head = literal_of(*conj);
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

// Grounds a pattern term under an id-valued substitution; -1 when the
// grounded term exceeds the universe depth bound.
int ground_term(const Term& t, const std::map<std::string, int>& subst,
                const TermUniverse& universe, bool& truncated) {
  if (t.is_var()) {
    auto it = subst.find(t.name);
    if (it == subst.end())
      throw SaturationError("clause variable '" + t.name +
                            "' not bound by the quantifier prefix");
    return it->second;
  }
  std::vector<int> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) {
    int id = ground_term(a, subst, universe, truncated);
    if (id < 0) return -1;
    args.push_back(id);
  }
  int id = universe.apply(t.name, args);
  if (id < 0) truncated = true;
  return id;
}

}  // namespace

// -- saturate ---------------------------------------------------------------

SaturationResult saturate(const std::vector<Formula>& Phi, const Signature& sig,
                          const SaturationConfig& config) {
  std::vector<BasicRule> rules;
  for (const Formula& phi : Phi) {
    HornClass hc = classify_horn(phi);
    if (!hc.is_any_horn_clause())
      throw SaturationError("not a (w-)Horn clause: " + to_string(phi));
    Connective track =
        hc.is_horn_clause() ? Connective::Strong : Connective::Weak;
    for (BasicRule& r : compile_clause(phi, track)) rules.push_back(std::move(r));
  }

  SaturationResult res{TermUniverse(sig, config.depth, config.frozen_vars),
                       CongruenceState(0), AtomBase{}, false, false, 0};
  res.congruence = CongruenceState(static_cast<int>(res.universe.terms().size()));

  if (config.shuffle_seed != 0) {
    std::mt19937 rng(config.shuffle_seed);
    std::shuffle(rules.begin(), rules.end(), rng);
  }

  const int num_terms = static_cast<int>(res.universe.terms().size());
  bool changed = true;
  while (changed && res.rounds < config.max_rounds && !res.atoms.bottom_derived) {
    changed = false;
    ++res.rounds;
    for (const BasicRule& rule : rules) {
      int k = static_cast<int>(rule.vars.size());
      std::vector<int> idx(k, 0);
      while (true) {
        std::map<std::string, int> subst;
        for (int i = 0; i < k; ++i) subst[rule.vars[i]] = idx[i];

        bool truncated_here = false;
        bool body_holds = true;
        for (const Literal& lit : rule.body) {
          if (lit.kind == Literal::Kind::Top) continue;
          if (lit.kind == Literal::Kind::Bot) {
            body_holds = false;
            break;
          }
          if (lit.kind == Literal::Kind::Equation) {
            int a = ground_term(lit.args[0], subst, res.universe, truncated_here);
            int b = ground_term(lit.args[1], subst, res.universe, truncated_here);
            if (a < 0 || b < 0 || !res.congruence.equivalent(a, b)) {
              body_holds = false;
              break;
            }
          } else {
            Atom atom{lit.pred, {}};
            bool out_of_universe = false;
            for (const Term& t : lit.args) {
              int id = ground_term(t, subst, res.universe, truncated_here);
              if (id < 0) { out_of_universe = true; break; }
              atom.args.push_back(id);
            }
            if (out_of_universe || !res.atoms.contains(atom, res.congruence)) {
              body_holds = false;
              break;
            }
          }
        }
        if (truncated_here) res.truncated = true;

        if (body_holds) {
          const Literal& head = rule.head;
          switch (head.kind) {
            case Literal::Kind::Top:
              break;
            case Literal::Kind::Bot:
              res.atoms.bottom_derived = true;
              break;
            case Literal::Kind::Equation: {
              bool trunc = false;
              int a = ground_term(head.args[0], subst, res.universe, trunc);
              int b = ground_term(head.args[1], subst, res.universe, trunc);
              if (trunc || a < 0 || b < 0) {
                res.truncated = true;
              } else if (res.congruence.merge(a, b, res.universe)) {
                res.atoms.rebuild(res.congruence);
                changed = true;
              }
              break;
            }
            case Literal::Kind::Atom: {
              bool trunc = false;
              Atom atom{head.pred, {}};
              bool ok = true;
              for (const Term& t : head.args) {
                int id = ground_term(t, subst, res.universe, trunc);
                if (id < 0) { ok = false; break; }
                atom.args.push_back(id);
              }
              if (!ok || trunc) {
                res.truncated = true;
              } else if (res.atoms.insert(atom, res.congruence)) {
                changed = true;
              }
              break;
            }
          }
        }
        if (res.atoms.bottom_derived) break;

        int i = 0;
        for (; i < k; ++i) {
          if (++idx[i] < num_terms) break;
          idx[i] = 0;
        }
        if (i == k) break;
        if (k == 0) break;
      }
      if (res.atoms.bottom_derived) break;
    }
  }

  bool fixpoint = !changed || res.atoms.bottom_derived;
  res.complete = res.universe.complete() && !res.truncated && fixpoint;
  return res;
}

// -- derives_atom -----------------------------------------------------------

Derivability derives_atom(const SaturationResult& res, const Formula& atom) {
  if (atom.kind != Formula::Kind::Atom)
    throw SaturationError("derives_atom expects an atomic formula");
  std::vector<int> ids;
  for (const Term& t : atom.args) {
    int id = res.universe.id_of(t);
    if (id < 0)
      return res.complete ? Derivability::No : Derivability::Unknown;
    ids.push_back(id);
  }
  if (atom.pred == kEqualityPred) {
    if (res.congruence.equivalent(ids[0], ids[1])) return Derivability::Yes;
    return res.complete ? Derivability::No : Derivability::Unknown;
  }
  Atom a{atom.pred, ids};
  if (res.atoms.contains(a, res.congruence)) return Derivability::Yes;
  return res.complete ? Derivability::No : Derivability::Unknown;
}

// -- Term structure ---------------------------------------------------------

namespace {

TermStructure materialize(const TermUniverse& universe, const CongruenceState& cc,
                          const AtomBase& atoms, const Signature& sig) {
  TermStructure ts;
  auto classes = cc.classes();

  // Canonical representative per class: minimal by (depth, print).
  std::vector<std::pair<Term, std::vector<int>>> ordered;
  for (auto& members : classes) {
    int best = members[0];
    for (int id : members)
      if (term_less(universe.terms()[id], universe.terms()[best])) best = id;
    ordered.emplace_back(universe.terms()[best], members);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return term_less(a.first, b.first); });

  FuzzyStructure& M = ts.structure;
  M.algebra = boolean2();
  M.sig = sig;
  M.equality_is_identity = true;
  if (sig.has_equality()) M.sig.enable_equality();

  if (ordered.empty())
    throw SaturationError(
        "empty term universe: declare a constant or configure frozen variables");

  for (size_t i = 0; i < ordered.size(); ++i) {
    const auto& [rep, members] = ordered[i];
    M.domain.push_back(to_string(rep));
    ts.class_rep.push_back(universe.id_of(rep));
    ts.class_members.push_back(members);
    std::vector<std::string> names;
    for (int id : members) names.push_back(to_string(universe.terms()[id]));
    std::sort(names.begin(), names.end());
    ts.class_member_names.push_back(std::move(names));
    for (int id : members) ts.term_class[id] = static_cast<int>(i);
  }

  // Function tables act representative-wise; applications that would leave
  // the universe make the structure partial.
  for (const auto& [fname, arity] : sig.functions()) {
    auto& table = M.funcs[fname];
    if (arity == 0) {
      int id = universe.id_of(Term::app(fname));
      if (id >= 0) table[{}] = ts.term_class.at(cc.find(id));
      else M.partial = true;
      continue;
    }
    int n = static_cast<int>(M.domain.size());
    std::vector<int> idx(arity, 0);
    if (n == 0) continue;
    while (true) {
      std::vector<int> argterms;
      for (int i = 0; i < arity; ++i) argterms.push_back(ts.class_rep[idx[i]]);
      int applied = universe.apply(fname, argterms);
      if (applied >= 0) {
        table[idx] = ts.term_class.at(cc.find(applied));
      } else {
        M.partial = true;
      }
      int i = 0;
      for (; i < arity; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
      if (i == arity) break;
    }
  }

  // Crisp predicates from the atom base; equality handled as identity.
  for (const auto& [pname, arity] : sig.predicates()) {
    if (pname == kEqualityPred) continue;
    auto& table = M.preds[pname];
    int n = static_cast<int>(M.domain.size());
    std::vector<int> idx(arity, 0);
    while (true) {
      Atom atom{pname, {}};
      for (int i = 0; i < arity; ++i) atom.args.push_back(ts.class_rep[idx[i]]);
      table[idx] = atoms.contains(atom, cc) ? TruthValue(1) : TruthValue(0);
      int i = 0;
      for (; i < arity; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
      if (i == arity) break;
      if (arity == 0) break;
    }
  }

  return ts;
}

}  // namespace

TermStructure build_term_structure(const SaturationResult& res) {
  if (res.atoms.bottom_derived)
    throw SaturationError("term structure requires a consistent theory");
  return materialize(res.universe, res.congruence, res.atoms, res.universe.sig());
}

TermStructure build_term_structure_from_atoms(
    const std::vector<Formula>& atoms,
    const std::vector<std::pair<Term, Term>>& equations, const Signature& sig,
    const SaturationConfig& config) {
  TermUniverse universe(sig, config.depth, config.frozen_vars);
  CongruenceState cc(static_cast<int>(universe.terms().size()));
  for (const auto& [t1, t2] : equations) {
    int a = universe.id_of(t1);
    int b = universe.id_of(t2);
    if (a < 0 || b < 0)
      throw SaturationError("equation mentions a term outside the universe");
    cc.merge(a, b, universe);
  }
  AtomBase base;
  for (const Formula& f : atoms) {
    if (f.kind != Formula::Kind::Atom)
      throw SaturationError("expected an atomic formula");
    if (f.pred == kEqualityPred) {
      int a = universe.id_of(f.args[0]);
      int b = universe.id_of(f.args[1]);
      if (a < 0 || b < 0)
        throw SaturationError("equation mentions a term outside the universe");
      cc.merge(a, b, universe);
      continue;
    }
    Atom atom{f.pred, {}};
    for (const Term& t : f.args) {
      int id = universe.id_of(t);
      if (id < 0) throw SaturationError("atom mentions a term outside the universe");
      atom.args.push_back(id);
    }
    base.insert(atom, cc);
  }
  base.rebuild(cc);
  return materialize(universe, cc, base, sig);
}

VarEvaluation canonical_evaluation(const SaturationResult& res,
                                   const TermStructure& ts) {
  VarEvaluation v;
  for (const std::string& name : res.universe.frozen()) {
    int id = res.universe.id_of(Term::var(name));
    v[name] = ts.term_class.at(res.congruence.find(id));
  }
  return v;
}

void write_classes(std::ostream& out, const TermStructure& ts) {
  for (size_t i = 0; i < ts.class_member_names.size(); ++i) {
    out << i << ":";
    for (size_t j = 0; j < ts.class_member_names[i].size(); ++j)
      out << (j ? ", " : " ") << ts.class_member_names[i][j];
    out << "\n";
  }
}

}  // namespace fuzzyhorn
