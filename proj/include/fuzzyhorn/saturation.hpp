#ifndef FUZZYHORN_SATURATION_HPP
#define FUZZYHORN_SATURATION_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fuzzyhorn/semantics.hpp"
#include "fuzzyhorn/syntax.hpp"

namespace fuzzyhorn {

struct SaturationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SaturationConfig {
  int depth = 2;          // term universe depth bound
  int frozen_vars = 0;    // open-term generators v1..vm
  int max_rounds = 1000;
  /// Nonzero seeds shuffle the clause/instance processing order; the
  /// result must not depend on it.
  unsigned shuffle_seed = 0;
};

/// Hash-consed set of terms over the signature's constants, functions and
/// the frozen variables, up to the depth bound.
class TermUniverse {
 public:
  TermUniverse(const Signature& sig, int depth, int frozen_vars);

  const Signature& sig() const { return sig_; }
  int depth_bound() const { return depth_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<std::string>& frozen() const { return frozen_; }
  /// True when the universe is exhaustive: no function symbol of arity
  /// >= 1 exists, so no depth truncation happened.
  bool complete() const { return complete_; }

  /// Id of a term already in the universe, or -1.
  int id_of(const Term& t) const;
  /// Interns an application of fn to existing term ids; -1 when the
  /// resulting term exceeds the depth bound.
  int apply(const std::string& fn, const std::vector<int>& args) const;

 private:
  int intern(const Term& t);
  Signature sig_;
  int depth_;
  std::vector<Term> terms_;
  std::map<Term, int> index_;
  std::vector<std::string> frozen_;
  bool complete_;
};

/// Ground congruence closure over universe term ids: union-find plus a
/// congruence table keyed by (function, representative argument tuple).
class CongruenceState {
 public:
  explicit CongruenceState(int num_terms);

  int find(int id) const;
  bool equivalent(int a, int b) const { return find(a) == find(b); }
  /// Merges the classes of a and b and propagates congruences (C1).
  /// Class representatives are the minimal member by (depth, print).
  /// Returns true if anything changed.
  bool merge(int a, int b, const TermUniverse& universe);

  std::vector<std::vector<int>> classes() const;

 private:
  mutable std::vector<int> parent_;
};

struct Atom {
  std::string pred;
  std::vector<int> args;  // representative term ids
  bool operator<(const Atom& other) const {
    if (pred != other.pred) return pred < other.pred;
    return args < other.args;
  }
  bool operator==(const Atom& other) const {
    return pred == other.pred && args == other.args;
  }
};

/// Derived atoms stored with representative arguments; membership depends
/// only on congruence classes (C2).
class AtomBase {
 public:
  bool insert(const Atom& atom, const CongruenceState& cc);
  bool contains(const Atom& atom, const CongruenceState& cc) const;
  /// Re-canonicalizes every stored atom after merges.
  void rebuild(const CongruenceState& cc);
  const std::set<Atom>& atoms() const { return atoms_; }
  bool bottom_derived = false;

 private:
  std::set<Atom> atoms_;
};

struct SaturationResult {
  TermUniverse universe;
  CongruenceState congruence;
  AtomBase atoms;
  /// Least fixpoint reached with no depth truncation; true only for
  /// function-free signatures.
  bool complete = false;
  bool truncated = false;  // some clause instance fell outside the universe
  int rounds = 0;
};

/// Hyperresolution to fixpoint for a universal (w-)Horn theory, with
/// congruence closure for derived equations. Every formula must classify
/// as a (w-)Horn clause.
SaturationResult saturate(const std::vector<Formula>& Phi, const Signature& sig,
                          const SaturationConfig& config = {});

enum class Derivability { Yes, No, Unknown };

/// Membership of an atomic formula in the derived base; No only when the
/// saturation was complete.
Derivability derives_atom(const SaturationResult& res, const Formula& atom);

/// The term structure and its bookkeeping: class members, canonical class
/// representatives (minimal by depth then print), term-to-class map.
struct TermStructure {
  FuzzyStructure structure;  // over boolean2, equality as class identity
  std::vector<int> class_rep;                // domain index -> universe term id
  std::vector<std::vector<int>> class_members;  // domain index -> term ids
  std::vector<std::vector<std::string>> class_member_names;
  std::map<int, int> term_class;             // universe term id -> domain index
};

TermStructure build_term_structure(const SaturationResult& res);

/// Same construction, seeded from externally supplied ground atoms and
/// equations (closed under congruence); used e.g. for non-Horn theories
/// whose atomic consequences come from an oracle.
TermStructure build_term_structure_from_atoms(const std::vector<Formula>& atoms,
                                              const std::vector<std::pair<Term, Term>>& equations,
                                              const Signature& sig,
                                              const SaturationConfig& config = {});

/// Maps each frozen variable to its class in the term structure.
VarEvaluation canonical_evaluation(const SaturationResult& res,
                                   const TermStructure& ts);

void write_classes(std::ostream& out, const TermStructure& ts);

}  // namespace fuzzyhorn

#endif
