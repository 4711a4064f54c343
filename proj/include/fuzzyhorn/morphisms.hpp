#ifndef FUZZYHORN_MORPHISMS_HPP
#define FUZZYHORN_MORPHISMS_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fuzzyhorn/saturation.hpp"
#include "fuzzyhorn/semantics.hpp"

namespace fuzzyhorn {

struct MorphismError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A pair <f, g>: f maps algebra values point-wise (finite description),
/// g maps source domain indices to target domain indices.
struct StructureMap {
  std::map<TruthValue, TruthValue> f;
  std::vector<int> g;

  /// The canonical 0 -> bot, 1 -> top embedding of Boolean2 into alg.
  static std::map<TruthValue, TruthValue> boolean_embedding(const MtlAlgebra& alg);
};

enum class MorphismKind { NotHomomorphism, Homomorphism, StrictHomomorphism, Embedding, Isomorphism };

struct MorphismReport {
  bool algebra_hom = false;    // f preserves meet/join/*/=>/0/1 on its points
  bool function_commutation = false;
  bool predicate_condition = false;  // (*): 1-atoms map to 1-atoms
  bool strict = false;               // the biconditional version of (*)
  bool f_injective = false;
  bool g_injective = false;
  bool f_surjective = false;
  bool g_surjective = false;
  std::string counterexample;  // first failed condition, human-readable

  MorphismKind kind() const;
  bool is_homomorphism() const {
    return algebra_hom && function_commutation && predicate_condition;
  }
};

std::string to_string(MorphismKind k);

/// Exhaustive check of every condition of the homomorphism hierarchy on a
/// finite source structure.
MorphismReport check_homomorphism(const FuzzyStructure& src,
                                  const FuzzyStructure& dst,
                                  const StructureMap& map);

struct ReducedReport {
  bool reduced = false;
  std::string witness;  // offending pair / element when not reduced
};

/// EQP: ==(d, e) = 1 exactly when d = e.
ReducedReport is_reduced(const FuzzyStructure& M);

struct FreeMapResult {
  bool ok = false;
  StructureMap map;
  std::string error;  // why construction failed
};

/// The canonical free homomorphism from the term structure into a reduced
/// model: f the Boolean2 embedding, g(class of t) = ||t|| in the target
/// under v. Well-definedness over each class is verified; failures are
/// reported with the offending class.
FreeMapResult canonical_free_map(const SaturationResult& res,
                                 const TermStructure& ts,
                                 const FuzzyStructure& target,
                                 const VarEvaluation& v);

struct UniquenessResult {
  bool unique_match = false;
  std::string witness;  // smallest differing universe term
};

/// Compares a candidate homomorphism with the canonical map on every
/// universe term class.
UniquenessResult check_uniqueness(const SaturationResult& res,
                                  const TermStructure& ts,
                                  const FuzzyStructure& target,
                                  const VarEvaluation& v,
                                  const StructureMap& candidate);

/// `g: <src-element> -> <dst-element>` and `f: p/q -> p/q` text blocks.
void write_map(std::ostream& out, const StructureMap& map,
               const FuzzyStructure& src, const FuzzyStructure& dst);
StructureMap parse_map(std::istream& in, const FuzzyStructure& src,
                       const FuzzyStructure& dst);

}  // namespace fuzzyhorn

#endif
