#ifndef FUZZYHORN_HERBRAND_HPP
#define FUZZYHORN_HERBRAND_HPP

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "fuzzyhorn/saturation.hpp"
#include "fuzzyhorn/semantics.hpp"
#include "fuzzyhorn/syntax.hpp"

namespace fuzzyhorn {

struct HerbrandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ground terms of the signature up to a depth bound, in deterministic
/// (depth, print) order. Exact iff no function symbol of arity >= 1.
struct HerbrandUniverse {
  std::vector<Term> terms;
  int depth;
  bool complete;
};

HerbrandUniverse herbrand_universe(const Signature& sig, int depth);

struct HStructure {
  HerbrandUniverse universe;
  std::vector<Formula> atoms;  // sorted by printed form
  FuzzyStructure structure;    // Boolean2, functions syntactic, == identity
};

/// Builds the H-structure for the given atom set. Rejects == atoms,
/// 0-ary predicate atoms, and atoms over terms outside the universe.
HStructure h_structure_from_atoms(const std::vector<Formula>& H,
                                  const Signature& sig, int depth);

/// Extracts H = { ground atom sigma : ||sigma|| = 1 in M } over non-==
/// predicates of arity >= 1, then builds the induced H-structure.
/// Atoms whose evaluation is not a definite value raise unless
/// allow_partial is set, in which case they are skipped.
HStructure h_structure_of_model(const FuzzyStructure& M, const Signature& sig,
                                int depth, bool allow_partial = false);

/// Least H-model of an equality-free universal Horn theory: ground-only
/// saturation (zero frozen variables); H = the derived ground atoms.
HStructure least_h_model(const std::vector<Formula>& Phi, const Signature& sig,
                         const SaturationConfig& config = {});

/// Sorted atom-per-line serialization.
void write_atom_set(std::ostream& out, const HStructure& h);

}  // namespace fuzzyhorn

#endif
