#ifndef FUZZYHORN_SYNTAX_HPP
#define FUZZYHORN_SYNTAX_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuzzyhorn {

/// Name of the distinguished equality predicate in surface syntax.
inline constexpr const char* kEqualityPred = "==";

struct SignatureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A predicate language: predicate and function symbols with arities.
/// 0-ary functions are constants, 0-ary predicates are truth constants.
class Signature {
 public:
  Signature() = default;

  void add_predicate(const std::string& name, int arity);
  void add_function(const std::string& name, int arity);
  void add_constant(const std::string& name) { add_function(name, 0); }
  void enable_equality();

  bool has_predicate(const std::string& name) const;
  bool has_function(const std::string& name) const;
  bool has_equality() const { return has_equality_; }
  int predicate_arity(const std::string& name) const;
  int function_arity(const std::string& name) const;

  const std::map<std::string, int>& predicates() const { return predicates_; }
  const std::map<std::string, int>& functions() const { return functions_; }

  std::vector<std::string> constants() const;

 private:
  std::map<std::string, int> predicates_;
  std::map<std::string, int> functions_;
  bool has_equality_ = false;
};

/// First-order term: a variable or a function application.
/// Constants are 0-ary applications.
struct Term {
  enum class Kind { Var, App };
  Kind kind;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string name) {
    return Term{Kind::Var, std::move(name), {}};
  }
  static Term app(std::string name, std::vector<Term> args = {}) {
    return Term{Kind::App, std::move(name), std::move(args)};
  }

  bool is_var() const { return kind == Kind::Var; }
  bool is_ground() const;
  int depth() const;

  bool operator==(const Term& other) const;
  bool operator<(const Term& other) const;
};

std::string to_string(const Term& t);
void collect_vars(const Term& t, std::set<std::string>& out);

enum class Connective { Strong, Weak, Or, Implies };

/// Formula AST. Not and Iff appear only in raw parse trees; normalize()
/// rewrites ~p to p -> bot and p <-> q to (p -> q) /\ (q -> p).
struct Formula {
  enum class Kind { Atom, Bot, Top, Binary, Not, Iff, Forall, Exists };

  Kind kind;
  std::string pred;            // Atom: predicate symbol
  std::vector<Term> args;      // Atom arguments
  Connective conn = Connective::Strong;  // Binary
  std::vector<Formula> sub;    // Binary/Iff: 2, Not/quantifier: 1
  std::string bound_var;       // quantifiers

  static Formula atom(std::string pred, std::vector<Term> args = {});
  static Formula bot() { return Formula{Kind::Bot, "", {}, Connective::Strong, {}, ""}; }
  static Formula top() { return Formula{Kind::Top, "", {}, Connective::Strong, {}, ""}; }
  static Formula binary(Connective c, Formula lhs, Formula rhs);
  static Formula negation(Formula f);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  /// Convenience: the normalized form of ~f, i.e. f -> bot.
  static Formula neg_normalized(Formula f) {
    return binary(Connective::Implies, std::move(f), bot());
  }

  bool is_atomic() const { return kind == Kind::Atom || kind == Kind::Bot || kind == Kind::Top; }

  bool operator==(const Formula& other) const;
};

std::string to_string(const Formula& f);

/// Expands Not and Iff; the result uses only the primitive constructors.
Formula normalize(const Formula& f);

std::set<std::string> free_vars(const Formula& f);

/// Rank by the recursion: atoms 0; Not and quantifiers add 1; binary
/// connectives sum over both sides. On normalized trees Not never occurs,
/// so the normalized rank of ~p equals the rank of p.
int rank(const Formula& f);

// -- Horn classification ----------------------------------------------------

enum class HornLevel { Basic, QuantifierFree, Clause, Formula, None };

/// Classification on the strong (&) and weak (/\) tracks. A formula with
/// no conjunctions at all (e.g. a bare atom) is Horn on both tracks.
struct HornClass {
  HornLevel strong = HornLevel::None;
  HornLevel weak = HornLevel::None;

  bool is_horn_clause() const {
    return strong == HornLevel::Clause || strong == HornLevel::Basic ||
           strong == HornLevel::QuantifierFree;
  }
  bool is_w_horn_clause() const {
    return weak == HornLevel::Clause || weak == HornLevel::Basic ||
           weak == HornLevel::QuantifierFree;
  }
  bool is_any_horn_clause() const { return is_horn_clause() || is_w_horn_clause(); }
  bool is_not_horn() const {
    return strong == HornLevel::None && weak == HornLevel::None;
  }
};

HornClass classify_horn(const Formula& f);

/// Human-readable tag, e.g. "HornClause", "BasicWHorn", "NotHorn".
std::string horn_tag(const HornClass& c);

// -- Substitution -----------------------------------------------------------

using Substitution = std::map<std::string, Term>;

Term substitute(const Term& t, const Substitution& s);

/// Simultaneous capture-avoiding substitution; bound variables are renamed
/// with a primed-name scheme when a replacing term would be captured.
Formula substitute(const Formula& f, const Substitution& s);

// -- Similarity / congruence axioms -----------------------------------------

/// S1-S3 plus one C1 instance per function symbol of arity >= 1 and one C2
/// instance per predicate symbol of arity >= 1 (equality excluded from C2).
/// Returned normalized.
std::vector<Formula> similarity_axioms(const Signature& sig);

}  // namespace fuzzyhorn

#endif
