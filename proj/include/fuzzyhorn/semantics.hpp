#ifndef FUZZYHORN_SEMANTICS_HPP
#define FUZZYHORN_SEMANTICS_HPP

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyhorn/algebra.hpp"
#include "fuzzyhorn/syntax.hpp"

namespace fuzzyhorn {

struct SemanticsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite fuzzy first-order structure. Domain elements are indices into
/// `domain`; function tables may be partial (a truncated term structure),
/// in which case evaluation reports UnknownAtDepth instead of a value.
struct FuzzyStructure {
  std::shared_ptr<const MtlAlgebra> algebra;
  Signature sig;
  std::vector<std::string> domain;

  std::map<std::string, std::map<std::vector<int>, int>> funcs;
  std::map<std::string, std::map<std::vector<int>, TruthValue>> preds;

  /// When set, == is interpreted as crisp identity of domain elements
  /// rather than via an explicit table.
  bool equality_is_identity = false;

  /// True when some function application fell outside the materialized
  /// domain (depth-truncated term universes).
  bool partial = false;

  int element_index(const std::string& name) const;
  void validate() const;
};

/// Mapping from variable names to domain element indices.
using VarEvaluation = std::map<std::string, int>;

struct TruthOutcome {
  enum class Kind { Value, Undefined, UnknownAtDepth };
  Kind kind;
  TruthValue value;  // meaningful iff kind == Value
  int depth = 0;     // meaningful iff kind == UnknownAtDepth

  static TruthOutcome of(TruthValue v) { return {Kind::Value, std::move(v), 0}; }
  static TruthOutcome undefined() { return {Kind::Undefined, TruthValue(0), 0}; }
  static TruthOutcome unknown(int depth) {
    return {Kind::UnknownAtDepth, TruthValue(0), depth};
  }

  bool is_value() const { return kind == Kind::Value; }
  bool is_one(const MtlAlgebra& alg) const {
    return is_value() && value == alg.top();
  }
};

std::string to_string(const TruthOutcome& o);

/// Recursive term value; nullopt when a partial function table has no
/// entry for the argument tuple.
std::optional<int> eval_term(const FuzzyStructure& M, const VarEvaluation& v,
                             const Term& t);

TruthOutcome eval_formula(const FuzzyStructure& M, const VarEvaluation& v,
                          const Formula& phi);

/// Evaluation of a sentence under the empty assignment.
TruthOutcome eval_sentence(const FuzzyStructure& M, const Formula& phi);

struct ModelCheckResult {
  enum class Verdict { Yes, No, Unknown };
  Verdict verdict;
  // For No: the failing formula, assignment, and its value.
  std::optional<Formula> witness_formula;
  VarEvaluation witness_assignment;
  TruthOutcome witness_value = TruthOutcome::of(TruthValue(1));

  bool yes() const { return verdict == Verdict::Yes; }
};

/// Checks that every formula holds at value 1 under every assignment of
/// its free variables over the finite domain.
ModelCheckResult is_model(const FuzzyStructure& M, const std::vector<Formula>& Phi);

// -- Structure files --------------------------------------------------------

/// Format:
///   algebra <name> | algebra table <path>
///   domain e1 e2 ...
///   equality identity            (optional)
///   const c = e1
///   fun F = (e1)->e2 (e2)->e2
///   pred P = (e1)->1/2 (e2)->1
///   pred Q = ()->3/5             (0-ary predicate)
FuzzyStructure parse_structure(std::istream& in);
FuzzyStructure load_structure(const std::string& path);
void write_structure(std::ostream& out, const FuzzyStructure& M);

}  // namespace fuzzyhorn

#endif
