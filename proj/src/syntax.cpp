#include "fuzzyhorn/syntax.hpp"

#include <algorithm>
#include <sstream>

namespace fuzzyhorn {

// -- Signature --------------------------------------------------------------

void Signature::add_predicate(const std::string& name, int arity) {
  if (arity < 0) throw SignatureError("negative arity for predicate " + name);
  if (functions_.count(name))
    throw SignatureError("symbol '" + name + "' already declared as a function");
  auto it = predicates_.find(name);
  if (it != predicates_.end() && it->second != arity)
    throw SignatureError("predicate '" + name + "' redeclared with different arity");
  predicates_[name] = arity;
}

void Signature::add_function(const std::string& name, int arity) {
  if (arity < 0) throw SignatureError("negative arity for function " + name);
  if (predicates_.count(name))
    throw SignatureError("symbol '" + name + "' already declared as a predicate");
  auto it = functions_.find(name);
  if (it != functions_.end() && it->second != arity)
    throw SignatureError("function '" + name + "' redeclared with different arity");
  functions_[name] = arity;
}

void Signature::enable_equality() {
  has_equality_ = true;
  predicates_[kEqualityPred] = 2;
}

bool Signature::has_predicate(const std::string& name) const {
  return predicates_.count(name) != 0;
}

bool Signature::has_function(const std::string& name) const {
  return functions_.count(name) != 0;
}

int Signature::predicate_arity(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end())
    throw SignatureError("undeclared predicate '" + name + "'");
  return it->second;
}

int Signature::function_arity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end())
    throw SignatureError("undeclared function '" + name + "'");
  return it->second;
}

std::vector<std::string> Signature::constants() const {
  std::vector<std::string> out;
  for (const auto& [name, arity] : functions_)
    if (arity == 0) out.push_back(name);
  return out;
}

// -- Term -------------------------------------------------------------------

bool Term::is_ground() const {
  if (is_var()) return false;
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.is_ground(); });
}

int Term::depth() const {
  if (args.empty()) return 0;
  int d = 0;
  for (const Term& a : args) d = std::max(d, a.depth());
  return d + 1;
}

bool Term::operator==(const Term& other) const {
  return kind == other.kind && name == other.name && args == other.args;
}

bool Term::operator<(const Term& other) const {
  if (kind != other.kind) return kind < other.kind;
  if (name != other.name) return name < other.name;
  return args < other.args;
}

std::string to_string(const Term& t) {
  if (t.args.empty()) return t.name;
  std::string out = t.name + "(";
  for (size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t.args[i]);
  }
  return out + ")";
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name);
  } else {
    for (const Term& a : t.args) collect_vars(a, out);
  }
}

// -- Formula constructors ---------------------------------------------------

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  Formula f{Kind::Atom, std::move(pred), std::move(args), Connective::Strong, {}, ""};
  return f;
}

Formula Formula::binary(Connective c, Formula lhs, Formula rhs) {
  Formula f{Kind::Binary, "", {}, c, {}, ""};
  f.sub.push_back(std::move(lhs));
  f.sub.push_back(std::move(rhs));
  return f;
}

Formula Formula::negation(Formula inner) {
  Formula f{Kind::Not, "", {}, Connective::Strong, {}, ""};
  f.sub.push_back(std::move(inner));
  return f;
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  Formula f{Kind::Iff, "", {}, Connective::Strong, {}, ""};
  f.sub.push_back(std::move(lhs));
  f.sub.push_back(std::move(rhs));
  return f;
}

Formula Formula::forall(std::string var, Formula body) {
  Formula f{Kind::Forall, "", {}, Connective::Strong, {}, std::move(var)};
  f.sub.push_back(std::move(body));
  return f;
}

Formula Formula::exists(std::string var, Formula body) {
  Formula f{Kind::Exists, "", {}, Connective::Strong, {}, std::move(var)};
  f.sub.push_back(std::move(body));
  return f;
}

bool Formula::operator==(const Formula& other) const {
  return kind == other.kind && pred == other.pred && args == other.args &&
         conn == other.conn && bound_var == other.bound_var && sub == other.sub;
}

// -- Printing ---------------------------------------------------------------

namespace {

const char* conn_text(Connective c) {
  switch (c) {
    case Connective::Strong: return " & ";
    case Connective::Weak: return " /\\ ";
    case Connective::Or: return " \\/ ";
    case Connective::Implies: return " -> ";
  }
  return "?";
}

int precedence(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Bot:
    case Formula::Kind::Top:
      return 100;
    case Formula::Kind::Not:
      return 50;
    case Formula::Kind::Binary:
      switch (f.conn) {
        case Connective::Strong: return 40;
        case Connective::Weak: return 30;
        case Connective::Or: return 20;
        case Connective::Implies: return 10;
      }
      return 0;
    case Formula::Kind::Iff:
      return 10;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return 5;
  }
  return 0;
}

void print_into(const Formula& f, std::string& out, int parent_prec) {
  int prec = precedence(f);
  bool paren = prec < parent_prec;
  if (paren) out += "(";
  switch (f.kind) {
    case Formula::Kind::Atom:
      if (f.pred == kEqualityPred) {
        out += to_string(f.args[0]) + " == " + to_string(f.args[1]);
      } else {
        out += f.pred;
        if (!f.args.empty()) {
          out += "(";
          for (size_t i = 0; i < f.args.size(); ++i) {
            if (i) out += ", ";
            out += to_string(f.args[i]);
          }
          out += ")";
        }
      }
      break;
    case Formula::Kind::Bot:
      out += "bot";
      break;
    case Formula::Kind::Top:
      out += "top";
      break;
    case Formula::Kind::Not:
      out += "~";
      print_into(f.sub[0], out, prec + 1);
      break;
    case Formula::Kind::Binary: {
      // ->, <-> non-associative in printing: parenthesize both sides at
      // prec+1; the associative conjunctions chain to the left.
      bool assoc = f.conn != Connective::Implies;
      print_into(f.sub[0], out, assoc ? prec : prec + 1);
      out += conn_text(f.conn);
      print_into(f.sub[1], out, prec + 1);
      break;
    }
    case Formula::Kind::Iff:
      print_into(f.sub[0], out, prec + 1);
      out += " <-> ";
      print_into(f.sub[1], out, prec + 1);
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out += (f.kind == Formula::Kind::Forall) ? "forall " : "exists ";
      out += f.bound_var + ". ";
      print_into(f.sub[0], out, prec);
      break;
  }
  if (paren) out += ")";
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print_into(f, out, 0);
  return out;
}

// -- Normalization ----------------------------------------------------------

Formula normalize(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Bot:
    case Formula::Kind::Top:
      return f;
    case Formula::Kind::Not:
      return Formula::neg_normalized(normalize(f.sub[0]));
    case Formula::Kind::Iff: {
      Formula l = normalize(f.sub[0]);
      Formula r = normalize(f.sub[1]);
      return Formula::binary(Connective::Weak,
                             Formula::binary(Connective::Implies, l, r),
                             Formula::binary(Connective::Implies, r, l));
    }
    case Formula::Kind::Binary:
      return Formula::binary(f.conn, normalize(f.sub[0]), normalize(f.sub[1]));
    case Formula::Kind::Forall:
      return Formula::forall(f.bound_var, normalize(f.sub[0]));
    case Formula::Kind::Exists:
      return Formula::exists(f.bound_var, normalize(f.sub[0]));
  }
  throw std::logic_error("unreachable");
}

// -- Free variables ---------------------------------------------------------

namespace {

void free_vars_into(const Formula& f, std::set<std::string>& bound,
                    std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      std::set<std::string> vars;
      for (const Term& t : f.args) collect_vars(t, vars);
      for (const auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case Formula::Kind::Bot:
    case Formula::Kind::Top:
      break;
    case Formula::Kind::Not:
    case Formula::Kind::Binary:
    case Formula::Kind::Iff:
      for (const Formula& s : f.sub) free_vars_into(s, bound, out);
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool was_bound = bound.count(f.bound_var) != 0;
      bound.insert(f.bound_var);
      free_vars_into(f.sub[0], bound, out);
      if (!was_bound) bound.erase(f.bound_var);
      break;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

// -- Rank -------------------------------------------------------------------

int rank(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Bot:
    case Formula::Kind::Top:
      return 0;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return rank(f.sub[0]) + 1;
    case Formula::Kind::Binary:
    case Formula::Kind::Iff:
      return rank(f.sub[0]) + rank(f.sub[1]);
  }
  throw std::logic_error("unreachable");
}

// -- Horn classification ----------------------------------------------------

namespace {

// Flattens a left- or right-nested chain of connective c into parts.
void flatten(const Formula& f, Connective c, std::vector<const Formula*>& out) {
  if (f.kind == Formula::Kind::Binary && f.conn == c) {
    flatten(f.sub[0], c, out);
    flatten(f.sub[1], c, out);
  } else {
    out.push_back(&f);
  }
}

// Basic Horn on track c: a1 c ... c an -> b with atomic parts, or a bare
// atomic formula (n = 0). A single implication with atomic body is basic
// on both tracks since no conjunction occurs.
bool is_basic(const Formula& f, Connective c) {
  if (f.is_atomic()) return true;
  if (f.kind != Formula::Kind::Binary || f.conn != Connective::Implies)
    return false;
  const Formula& body = f.sub[0];
  const Formula& head = f.sub[1];
  if (!head.is_atomic()) return false;
  std::vector<const Formula*> parts;
  flatten(body, c, parts);
  return std::all_of(parts.begin(), parts.end(),
                     [](const Formula* p) { return p->is_atomic(); });
}

bool is_quantifier_free_horn(const Formula& f, Connective c) {
  std::vector<const Formula*> parts;
  flatten(f, c, parts);
  return std::all_of(parts.begin(), parts.end(),
                     [c](const Formula* p) { return is_basic(*p, c); });
}

HornLevel classify_track(const Formula& f, Connective c) {
  // Strip the quantifier prefix.
  const Formula* body = &f;
  bool any_quantifier = false;
  bool all_universal = true;
  while (body->kind == Formula::Kind::Forall ||
         body->kind == Formula::Kind::Exists) {
    any_quantifier = true;
    if (body->kind == Formula::Kind::Exists) all_universal = false;
    body = &body->sub[0];
  }
  if (!is_quantifier_free_horn(*body, c)) return HornLevel::None;
  if (!any_quantifier) {
    if (is_basic(*body, c)) return HornLevel::Basic;
    return HornLevel::QuantifierFree;
  }
  return all_universal ? HornLevel::Clause : HornLevel::Formula;
}

}  // namespace

HornClass classify_horn(const Formula& f) {
  HornClass c;
  c.strong = classify_track(f, Connective::Strong);
  c.weak = classify_track(f, Connective::Weak);
  return c;
}

std::string horn_tag(const HornClass& c) {
  auto level_name = [](HornLevel l, bool weak) -> std::string {
    std::string w = weak ? "W" : "";
    switch (l) {
      case HornLevel::Basic: return "Basic" + w + "Horn";
      case HornLevel::QuantifierFree: return "QuantifierFree" + w + "Horn";
      case HornLevel::Clause: return weak ? "WHornClause" : "HornClause";
      case HornLevel::Formula: return weak ? "WHornFormula" : "HornFormula";
      case HornLevel::None: return "NotHorn";
    }
    return "NotHorn";
  };
  if (c.is_not_horn()) return "NotHorn";
  if (c.strong == c.weak) return level_name(c.strong, false) + "+weak";
  if (c.strong != HornLevel::None && c.weak != HornLevel::None)
    return level_name(c.strong, false) + "+" + level_name(c.weak, true);
  if (c.strong != HornLevel::None) return level_name(c.strong, false);
  return level_name(c.weak, true);
}

// -- Substitution -----------------------------------------------------------

Term substitute(const Term& t, const Substitution& s) {
  if (t.is_var()) {
    auto it = s.find(t.name);
    return it != s.end() ? it->second : t;
  }
  Term out = Term::app(t.name);
  out.args.reserve(t.args.size());
  for (const Term& a : t.args) out.args.push_back(substitute(a, s));
  return out;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string name = base + "'";
  while (avoid.count(name)) name += "'";
  return name;
}

Formula substitute_impl(const Formula& f, const Substitution& s,
                        const std::set<std::string>& avoid) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      Formula out = f;
      for (Term& t : out.args) t = substitute(t, s);
      return out;
    }
    case Formula::Kind::Bot:
    case Formula::Kind::Top:
      return f;
    case Formula::Kind::Not: {
      Formula out = Formula::negation(substitute_impl(f.sub[0], s, avoid));
      return out;
    }
    case Formula::Kind::Binary:
      return Formula::binary(f.conn, substitute_impl(f.sub[0], s, avoid),
                             substitute_impl(f.sub[1], s, avoid));
    case Formula::Kind::Iff:
      return Formula::iff(substitute_impl(f.sub[0], s, avoid),
                          substitute_impl(f.sub[1], s, avoid));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Substitution inner = s;
      inner.erase(f.bound_var);
      std::string var = f.bound_var;
      Formula body = f.sub[0];
      // Capture check: does any replacing term mention the bound variable?
      bool capture = false;
      std::set<std::string> fv = free_vars(body);
      for (const auto& [from, to] : inner) {
        if (!fv.count(from)) continue;
        std::set<std::string> tv;
        collect_vars(to, tv);
        if (tv.count(var)) { capture = true; break; }
      }
      if (capture) {
        std::set<std::string> used = avoid;
        for (const auto& [from, to] : inner) collect_vars(to, used);
        for (const auto& v : fv) used.insert(v);
        std::string renamed = fresh_name(var, used);
        Substitution rename{{var, Term::var(renamed)}};
        body = substitute_impl(body, rename, used);
        var = renamed;
      }
      Formula newbody = inner.empty() ? body : substitute_impl(body, inner, avoid);
      return f.kind == Formula::Kind::Forall ? Formula::forall(var, std::move(newbody))
                                             : Formula::exists(var, std::move(newbody));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& s) {
  std::set<std::string> avoid = free_vars(f);
  for (const auto& [from, to] : s) collect_vars(to, avoid);
  return substitute_impl(f, s, avoid);
}

// -- Similarity / congruence axioms -----------------------------------------

std::vector<Formula> similarity_axioms(const Signature& sig) {
  if (!sig.has_equality())
    throw SignatureError("similarity axioms require the equality symbol");

  auto eq = [](Term a, Term b) {
    return Formula::atom(kEqualityPred, {std::move(a), std::move(b)});
  };
  std::vector<Formula> out;

  // S1: forall x. x == x
  out.push_back(Formula::forall("x", eq(Term::var("x"), Term::var("x"))));
  // S2: forall x. forall y. (x == y -> y == x)
  out.push_back(Formula::forall(
      "x", Formula::forall(
               "y", Formula::binary(Connective::Implies,
                                    eq(Term::var("x"), Term::var("y")),
                                    eq(Term::var("y"), Term::var("x"))))));
  // S3: forall x y z. (x == y & y == z -> x == z)
  out.push_back(Formula::forall(
      "x",
      Formula::forall(
          "y", Formula::forall(
                   "z", Formula::binary(
                            Connective::Implies,
                            Formula::binary(Connective::Strong,
                                            eq(Term::var("x"), Term::var("y")),
                                            eq(Term::var("y"), Term::var("z"))),
                            eq(Term::var("x"), Term::var("z")))))));

  auto quantify_all = [](const std::vector<std::string>& vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = Formula::forall(*it, std::move(body));
    return body;
  };

  auto eq_chain = [&](int n, std::vector<Term>& xs, std::vector<Term>& ys,
                      std::vector<std::string>& names) {
    Formula body = eq(xs[0], ys[0]);
    for (int i = 1; i < n; ++i)
      body = Formula::binary(Connective::Strong, std::move(body), eq(xs[i], ys[i]));
    (void)names;
    return body;
  };

  for (const auto& [fname, arity] : sig.functions()) {
    if (arity == 0) continue;
    std::vector<Term> xs, ys;
    std::vector<std::string> names;
    for (int i = 0; i < arity; ++i) {
      xs.push_back(Term::var("x" + std::to_string(i + 1)));
      names.push_back(xs.back().name);
    }
    for (int i = 0; i < arity; ++i) {
      ys.push_back(Term::var("y" + std::to_string(i + 1)));
      names.push_back(ys.back().name);
    }
    Formula body = eq_chain(arity, xs, ys, names);
    Formula head = eq(Term::app(fname, xs), Term::app(fname, ys));
    out.push_back(quantify_all(
        names, Formula::binary(Connective::Implies, std::move(body), std::move(head))));
  }

  for (const auto& [pname, arity] : sig.predicates()) {
    if (arity == 0 || pname == kEqualityPred) continue;
    std::vector<Term> xs, ys;
    std::vector<std::string> names;
    for (int i = 0; i < arity; ++i) {
      xs.push_back(Term::var("x" + std::to_string(i + 1)));
      names.push_back(xs.back().name);
    }
    for (int i = 0; i < arity; ++i) {
      ys.push_back(Term::var("y" + std::to_string(i + 1)));
      names.push_back(ys.back().name);
    }
    Formula body = eq_chain(arity, xs, ys, names);
    Formula head = normalize(
        Formula::iff(Formula::atom(pname, xs), Formula::atom(pname, ys)));
    out.push_back(quantify_all(
        names, Formula::binary(Connective::Implies, std::move(body), std::move(head))));
  }

  return out;
}

}  // namespace fuzzyhorn
