#ifndef FUZZYHORN_ALGEBRA_HPP
#define FUZZYHORN_ALGEBRA_HPP

#include <boost/rational.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fuzzyhorn {

/// Exact rational truth value. All bundled algebras live in [0,1]; table
/// algebras use integer indices 0..n-1 as carrier elements.
using TruthValue = boost::rational<long long>;

TruthValue parse_truth_value(const std::string& text);
std::string to_string(const TruthValue& v);
std::string to_decimal_string(const TruthValue& v);

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A meet/join that does not exist in a user-supplied table algebra.
/// Evaluation surfaces this as an Undefined outcome.
struct UndefinedValueError : AlgebraError {
  using AlgebraError::AlgebraError;
};

/// Bounded integral commutative residuated lattice with prelinearity.
/// All operations are exact; values outside the carrier are rejected.
class MtlAlgebra {
 public:
  virtual ~MtlAlgebra() = default;

  virtual std::string name() const = 0;
  virtual bool contains(const TruthValue& v) const = 0;
  virtual bool leq(const TruthValue& a, const TruthValue& b) const = 0;

  virtual TruthValue meet(const TruthValue& a, const TruthValue& b) const = 0;
  virtual TruthValue join(const TruthValue& a, const TruthValue& b) const = 0;
  virtual TruthValue conj(const TruthValue& a, const TruthValue& b) const = 0;
  virtual TruthValue residuum(const TruthValue& a, const TruthValue& b) const = 0;

  virtual TruthValue bot() const = 0;
  virtual TruthValue top() const = 0;

  TruthValue neg(const TruthValue& a) const { return residuum(a, bot()); }

  /// Finite algebras can list their whole carrier; closed-form [0,1]
  /// algebras return nullopt.
  virtual std::optional<std::vector<TruthValue>> carrier() const { return std::nullopt; }

 protected:
  void require(const TruthValue& v) const;
};

// Bundled instances.
std::shared_ptr<const MtlAlgebra> boolean2();
std::shared_ptr<const MtlAlgebra> godel();
std::shared_ptr<const MtlAlgebra> lukasiewicz();
std::shared_ptr<const MtlAlgebra> product();
/// n-element chains 0, 1/(n-1), ..., 1 with the restricted t-norm.
std::shared_ptr<const MtlAlgebra> godel_chain(int n);
std::shared_ptr<const MtlAlgebra> lukasiewicz_chain(int n);

/// Looks up a bundled algebra by name: boolean2, godel, lukasiewicz,
/// product, godel-chain-N, lukasiewicz-chain-N.
std::shared_ptr<const MtlAlgebra> algebra_by_name(const std::string& name);

/// Finite algebra given by explicit operation tables over indices 0..n-1.
/// check_residuation must pass before the instance is used for evaluation.
class TableAlgebra : public MtlAlgebra {
 public:
  TableAlgebra(int n, std::vector<std::vector<int>> conj_table,
               std::vector<std::vector<int>> residuum_table,
               std::vector<std::vector<bool>> order);

  std::string name() const override { return "table"; }
  bool contains(const TruthValue& v) const override;
  bool leq(const TruthValue& a, const TruthValue& b) const override;
  TruthValue meet(const TruthValue& a, const TruthValue& b) const override;
  TruthValue join(const TruthValue& a, const TruthValue& b) const override;
  TruthValue conj(const TruthValue& a, const TruthValue& b) const override;
  TruthValue residuum(const TruthValue& a, const TruthValue& b) const override;
  TruthValue bot() const override { return 0; }
  TruthValue top() const override { return size_ - 1; }
  std::optional<std::vector<TruthValue>> carrier() const override;

 private:
  int index(const TruthValue& v) const;
  int size_;
  std::vector<std::vector<int>> conj_;
  std::vector<std::vector<int>> res_;
  std::vector<std::vector<bool>> leq_;
};

/// Table file: carrier size n, then n x n tables for *, => and the order
/// relation, row-major, whitespace separated. The loaded algebra is
/// validated with check_residuation before being returned.
std::shared_ptr<const MtlAlgebra> load_table_algebra(const std::string& path);

struct ResiduationReport {
  bool ok = true;
  std::string failure;  // description of the first counterexample
};

/// Verifies the residuation law conj(a,b) <= c iff a <= residuum(b,c) and
/// prelinearity over all pairs/triples drawn from the samples.
ResiduationReport check_residuation(const MtlAlgebra& alg,
                                    const std::vector<TruthValue>& samples);

/// Samples = the whole carrier for finite algebras.
ResiduationReport check_residuation(const MtlAlgebra& alg);

}  // namespace fuzzyhorn

#endif
