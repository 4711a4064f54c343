#include "fuzzyhorn/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fuzzyhorn {

TruthValue parse_truth_value(const std::string& text) {
  std::string s = text;
  size_t slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      long long num = std::stoll(s.substr(0, slash));
      long long den = std::stoll(s.substr(slash + 1));
      if (den == 0) throw AlgebraError("zero denominator in '" + text + "'");
      return TruthValue(num, den);
    }
    size_t dot = s.find('.');
    if (dot != std::string::npos) {
      // Exact decimal: 0.95 -> 95/100.
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      long long den = 1;
      for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      return TruthValue(std::stoll(digits), den);
    }
    return TruthValue(std::stoll(s));
  } catch (const AlgebraError&) {
    throw;
  } catch (const std::exception&) {
    throw AlgebraError("cannot parse truth value '" + text + "'");
  }
}

std::string to_string(const TruthValue& v) {
  if (v.denominator() == 1) return std::to_string(v.numerator());
  return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

std::string to_decimal_string(const TruthValue& v) {
  std::ostringstream out;
  out << boost::rational_cast<double>(v);
  return out.str();
}

void MtlAlgebra::require(const TruthValue& v) const {
  if (!contains(v))
    throw AlgebraError("value " + fuzzyhorn::to_string(v) +
                       " is not in the carrier of " + name());
}

namespace {

// [0,1] algebras sharing the natural order; differ in * and =>.
class UnitIntervalAlgebra : public MtlAlgebra {
 public:
  bool contains(const TruthValue& v) const override {
    return v >= TruthValue(0) && v <= TruthValue(1);
  }
  bool leq(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return a <= b;
  }
  TruthValue meet(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return std::min(a, b);
  }
  TruthValue join(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return std::max(a, b);
  }
  TruthValue bot() const override { return 0; }
  TruthValue top() const override { return 1; }
};

class GodelAlgebra : public UnitIntervalAlgebra {
 public:
  std::string name() const override { return "godel"; }
  TruthValue conj(const TruthValue& a, const TruthValue& b) const override {
    return meet(a, b);
  }
  TruthValue residuum(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return a <= b ? TruthValue(1) : b;
  }
};

class LukasiewiczAlgebra : public UnitIntervalAlgebra {
 public:
  std::string name() const override { return "lukasiewicz"; }
  TruthValue conj(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return std::max(TruthValue(0), a + b - 1);
  }
  TruthValue residuum(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return std::min(TruthValue(1), TruthValue(1) - a + b);
  }
};

class ProductAlgebra : public UnitIntervalAlgebra {
 public:
  std::string name() const override { return "product"; }
  TruthValue conj(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return a * b;
  }
  TruthValue residuum(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return a <= b ? TruthValue(1) : b / a;
  }
};

class Boolean2Algebra : public UnitIntervalAlgebra {
 public:
  std::string name() const override { return "boolean2"; }
  bool contains(const TruthValue& v) const override {
    return v == TruthValue(0) || v == TruthValue(1);
  }
  TruthValue conj(const TruthValue& a, const TruthValue& b) const override {
    return meet(a, b);
  }
  TruthValue residuum(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return a <= b ? TruthValue(1) : TruthValue(0);
  }
  std::optional<std::vector<TruthValue>> carrier() const override {
    return std::vector<TruthValue>{TruthValue(0), TruthValue(1)};
  }
};

// n-point subchain 0, 1/(n-1), ..., 1. Both the Godel and Lukasiewicz
// t-norms restrict to these points, so the closed forms apply directly.
class FiniteChainAlgebra : public MtlAlgebra {
 public:
  FiniteChainAlgebra(std::shared_ptr<const MtlAlgebra> base, int n, std::string name)
      : base_(std::move(base)), n_(n), name_(std::move(name)) {
    if (n < 2) throw AlgebraError("finite chain needs at least 2 elements");
  }
  std::string name() const override { return name_; }
  bool contains(const TruthValue& v) const override {
    if (v < TruthValue(0) || v > TruthValue(1)) return false;
    TruthValue scaled = v * (n_ - 1);
    return scaled.denominator() == 1;
  }
  bool leq(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return a <= b;
  }
  TruthValue meet(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return std::min(a, b);
  }
  TruthValue join(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return std::max(a, b);
  }
  TruthValue conj(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return base_->conj(a, b);
  }
  TruthValue residuum(const TruthValue& a, const TruthValue& b) const override {
    require(a);
    require(b);
    return base_->residuum(a, b);
  }
  TruthValue bot() const override { return 0; }
  TruthValue top() const override { return 1; }
  std::optional<std::vector<TruthValue>> carrier() const override {
    std::vector<TruthValue> out;
    for (int i = 0; i < n_; ++i) out.emplace_back(i, n_ - 1);
    return out;
  }

 private:
  std::shared_ptr<const MtlAlgebra> base_;
  int n_;
  std::string name_;
};

}  // namespace

std::shared_ptr<const MtlAlgebra> boolean2() {
  static auto inst = std::make_shared<Boolean2Algebra>();
  return inst;
}
std::shared_ptr<const MtlAlgebra> godel() {
  static auto inst = std::make_shared<GodelAlgebra>();
  return inst;
}
std::shared_ptr<const MtlAlgebra> lukasiewicz() {
  static auto inst = std::make_shared<LukasiewiczAlgebra>();
  return inst;
}
std::shared_ptr<const MtlAlgebra> product() {
  static auto inst = std::make_shared<ProductAlgebra>();
  return inst;
}
std::shared_ptr<const MtlAlgebra> godel_chain(int n) {
  return std::make_shared<FiniteChainAlgebra>(godel(), n,
                                              "godel-chain-" + std::to_string(n));
}
std::shared_ptr<const MtlAlgebra> lukasiewicz_chain(int n) {
  return std::make_shared<FiniteChainAlgebra>(
      lukasiewicz(), n, "lukasiewicz-chain-" + std::to_string(n));
}

std::shared_ptr<const MtlAlgebra> algebra_by_name(const std::string& name) {
  if (name == "boolean2") return boolean2();
  if (name == "godel") return godel();
  if (name == "lukasiewicz") return lukasiewicz();
  if (name == "product") return product();
  auto chain = [&](const std::string& prefix,
                   auto make) -> std::shared_ptr<const MtlAlgebra> {
    if (name.rfind(prefix, 0) != 0) return nullptr;
    try {
      return make(std::stoi(name.substr(prefix.size())));
    } catch (const std::exception&) {
      return nullptr;
    }
  };
  if (auto a = chain("godel-chain-", [](int n) { return godel_chain(n); })) return a;
  if (auto a = chain("lukasiewicz-chain-", [](int n) { return lukasiewicz_chain(n); }))
    return a;
  throw AlgebraError("unknown algebra '" + name + "'");
}

// -- TableAlgebra -----------------------------------------------------------

TableAlgebra::TableAlgebra(int n, std::vector<std::vector<int>> conj_table,
                           std::vector<std::vector<int>> residuum_table,
                           std::vector<std::vector<bool>> order)
    : size_(n),
      conj_(std::move(conj_table)),
      res_(std::move(residuum_table)),
      leq_(std::move(order)) {
  if (n < 2) throw AlgebraError("table algebra needs at least 2 elements");
  auto check_dims = [n](const auto& table, const char* what) {
    if (static_cast<int>(table.size()) != n)
      throw AlgebraError(std::string("bad ") + what + " table size");
    for (const auto& row : table)
      if (static_cast<int>(row.size()) != n)
        throw AlgebraError(std::string("bad ") + what + " table row size");
  };
  check_dims(conj_, "conjunction");
  check_dims(res_, "residuum");
  check_dims(leq_, "order");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (conj_[i][j] < 0 || conj_[i][j] >= n || res_[i][j] < 0 || res_[i][j] >= n)
        throw AlgebraError("table entry out of range");
    }
  for (int i = 0; i < n; ++i) {
    if (!leq_[0][i] || !leq_[i][n - 1])
      throw AlgebraError("order table lacks bounds 0 and n-1");
  }
}

int TableAlgebra::index(const TruthValue& v) const {
  if (v.denominator() != 1 || v < 0 || v >= size_)
    throw AlgebraError("value " + fuzzyhorn::to_string(v) +
                       " is not an element index of the table algebra");
  return static_cast<int>(v.numerator());
}

bool TableAlgebra::contains(const TruthValue& v) const {
  return v.denominator() == 1 && v >= 0 && v < size_;
}

bool TableAlgebra::leq(const TruthValue& a, const TruthValue& b) const {
  return leq_[index(a)][index(b)];
}

TruthValue TableAlgebra::meet(const TruthValue& a, const TruthValue& b) const {
  int i = index(a), j = index(b);
  // Greatest lower bound via the order table.
  int best = -1;
  for (int k = 0; k < size_; ++k) {
    if (leq_[k][i] && leq_[k][j] && (best < 0 || leq_[best][k])) best = k;
  }
  for (int k = 0; k < size_; ++k)
    if (leq_[k][i] && leq_[k][j] && !leq_[k][best])
      throw UndefinedValueError("order table has no meet for the given pair");
  return best;
}

TruthValue TableAlgebra::join(const TruthValue& a, const TruthValue& b) const {
  int i = index(a), j = index(b);
  int best = -1;
  for (int k = 0; k < size_; ++k) {
    if (leq_[i][k] && leq_[j][k] && (best < 0 || leq_[k][best])) best = k;
  }
  for (int k = 0; k < size_; ++k)
    if (leq_[i][k] && leq_[j][k] && !leq_[best][k])
      throw UndefinedValueError("order table has no join for the given pair");
  return best;
}

TruthValue TableAlgebra::conj(const TruthValue& a, const TruthValue& b) const {
  return conj_[index(a)][index(b)];
}

TruthValue TableAlgebra::residuum(const TruthValue& a, const TruthValue& b) const {
  return res_[index(a)][index(b)];
}

std::optional<std::vector<TruthValue>> TableAlgebra::carrier() const {
  std::vector<TruthValue> out;
  for (int i = 0; i < size_; ++i) out.emplace_back(i);
  return out;
}

std::shared_ptr<const MtlAlgebra> load_table_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("cannot open algebra file: " + path);
  int n;
  if (!(in >> n)) throw AlgebraError("algebra file: missing carrier size");
  auto read_table = [&](const char* what) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(in >> t[i][j]))
          throw AlgebraError(std::string("algebra file: truncated ") + what + " table");
    return t;
  };
  auto conj_table = read_table("conjunction");
  auto res_table = read_table("residuum");
  auto order_raw = read_table("order");
  std::vector<std::vector<bool>> order(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) order[i][j] = order_raw[i][j] != 0;
  auto alg = std::make_shared<TableAlgebra>(n, conj_table, res_table, order);
  auto report = check_residuation(*alg);
  if (!report.ok)
    throw AlgebraError("algebra file fails residuation/prelinearity: " + report.failure);
  return alg;
}

// -- Law checking -----------------------------------------------------------

ResiduationReport check_residuation(const MtlAlgebra& alg,
                                    const std::vector<TruthValue>& samples) {
  ResiduationReport report;
  auto fail = [&](const std::string& msg) {
    report.ok = false;
    report.failure = msg;
  };
  for (const TruthValue& a : samples) {
    for (const TruthValue& b : samples) {
      // Prelinearity.
      if (alg.join(alg.residuum(a, b), alg.residuum(b, a)) != alg.top()) {
        fail("prelinearity fails at a=" + to_string(a) + ", b=" + to_string(b));
        return report;
      }
      for (const TruthValue& c : samples) {
        bool lhs = alg.leq(alg.conj(a, b), c);
        bool rhs = alg.leq(a, alg.residuum(b, c));
        if (lhs != rhs) {
          fail("residuation fails at a=" + to_string(a) + ", b=" + to_string(b) +
               ", c=" + to_string(c));
          return report;
        }
      }
    }
  }
  return report;
}

ResiduationReport check_residuation(const MtlAlgebra& alg) {
  auto carrier = alg.carrier();
  if (!carrier)
    throw AlgebraError("check_residuation without samples needs a finite carrier");
  return check_residuation(alg, *carrier);
}

}  // namespace fuzzyhorn
