#include "fuzzyhorn/semantics.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fuzzyhorn {

int FuzzyStructure::element_index(const std::string& name) const {
  auto it = std::find(domain.begin(), domain.end(), name);
  if (it == domain.end())
    throw SemanticsError("unknown domain element '" + name + "'");
  return static_cast<int>(it - domain.begin());
}

void FuzzyStructure::validate() const {
  if (!algebra) throw SemanticsError("structure has no algebra");
  if (domain.empty()) throw SemanticsError("structure domain must be nonempty");
  for (const auto& [name, table] : preds)
    for (const auto& [args, val] : table)
      if (!algebra->contains(val))
        throw SemanticsError("predicate '" + name + "' value " + to_string(val) +
                             " outside the carrier of " + algebra->name());
  if (partial) return;
  size_t n = domain.size();
  auto tuples = [n](int arity) {
    size_t count = 1;
    for (int i = 0; i < arity; ++i) count *= n;
    return count;
  };
  for (const auto& [name, arity] : sig.predicates()) {
    if (name == kEqualityPred && equality_is_identity) continue;
    auto it = preds.find(name);
    size_t have = it == preds.end() ? 0 : it->second.size();
    if (have != tuples(arity))
      throw SemanticsError("predicate '" + name + "' table is incomplete");
  }
  for (const auto& [name, arity] : sig.functions()) {
    auto it = funcs.find(name);
    size_t have = it == funcs.end() ? 0 : it->second.size();
    if (have != tuples(arity))
      throw SemanticsError("function '" + name + "' table is incomplete");
  }
}

std::string to_string(const TruthOutcome& o) {
  switch (o.kind) {
    case TruthOutcome::Kind::Value: return to_string(o.value);
    case TruthOutcome::Kind::Undefined: return "undefined";
    case TruthOutcome::Kind::UnknownAtDepth:
      return "unknown@" + std::to_string(o.depth);
  }
  return "?";
}

std::optional<int> eval_term(const FuzzyStructure& M, const VarEvaluation& v,
                             const Term& t) {
  if (t.is_var()) {
    auto it = v.find(t.name);
    if (it == v.end())
      throw SemanticsError("unmapped variable '" + t.name + "'");
    return it->second;
  }
  std::vector<int> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) {
    auto val = eval_term(M, v, a);
    if (!val) return std::nullopt;
    args.push_back(*val);
  }
  auto table = M.funcs.find(t.name);
  if (table == M.funcs.end())
    throw SemanticsError("uninterpreted function '" + t.name + "'");
  auto entry = table->second.find(args);
  if (entry == table->second.end()) {
    if (M.partial) return std::nullopt;
    throw SemanticsError("function '" + t.name + "' has no entry for arguments");
  }
  return entry->second;
}

namespace {

TruthOutcome eval_atom(const FuzzyStructure& M, const VarEvaluation& v,
                       const Formula& phi) {
  std::vector<int> args;
  args.reserve(phi.args.size());
  for (const Term& t : phi.args) {
    auto val = eval_term(M, v, t);
    if (!val) return TruthOutcome::unknown(0);
    args.push_back(*val);
  }
  if (phi.pred == kEqualityPred && M.equality_is_identity) {
    return TruthOutcome::of(args[0] == args[1] ? M.algebra->top() : M.algebra->bot());
  }
  auto table = M.preds.find(phi.pred);
  if (table == M.preds.end())
    throw SemanticsError("uninterpreted predicate '" + phi.pred + "'");
  auto entry = table->second.find(args);
  if (entry == table->second.end())
    throw SemanticsError("predicate '" + phi.pred + "' has no entry for arguments");
  return TruthOutcome::of(entry->second);
}

}  // namespace

TruthOutcome eval_formula(const FuzzyStructure& M, const VarEvaluation& v,
                          const Formula& phi) {
  const MtlAlgebra& alg = *M.algebra;
  switch (phi.kind) {
    case Formula::Kind::Atom:
      return eval_atom(M, v, phi);
    case Formula::Kind::Bot:
      return TruthOutcome::of(alg.bot());
    case Formula::Kind::Top:
      return TruthOutcome::of(alg.top());
    case Formula::Kind::Not: {
      TruthOutcome inner = eval_formula(M, v, phi.sub[0]);
      if (!inner.is_value()) return inner;
      return TruthOutcome::of(alg.neg(inner.value));
    }
    case Formula::Kind::Iff: {
      TruthOutcome l = eval_formula(M, v, phi.sub[0]);
      TruthOutcome r = eval_formula(M, v, phi.sub[1]);
      if (!l.is_value()) return l;
      if (!r.is_value()) return r;
      return TruthOutcome::of(
          alg.meet(alg.residuum(l.value, r.value), alg.residuum(r.value, l.value)));
    }
    case Formula::Kind::Binary: {
      TruthOutcome l = eval_formula(M, v, phi.sub[0]);
      TruthOutcome r = eval_formula(M, v, phi.sub[1]);
      if (!l.is_value()) return l;
      if (!r.is_value()) return r;
      try {
        switch (phi.conn) {
          case Connective::Strong:
            return TruthOutcome::of(alg.conj(l.value, r.value));
          case Connective::Weak:
            return TruthOutcome::of(alg.meet(l.value, r.value));
          case Connective::Or:
            return TruthOutcome::of(alg.join(l.value, r.value));
          case Connective::Implies:
            return TruthOutcome::of(alg.residuum(l.value, r.value));
        }
      } catch (const UndefinedValueError&) {
        return TruthOutcome::undefined();
      }
      throw std::logic_error("unreachable");
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool universal = phi.kind == Formula::Kind::Forall;
      std::optional<TruthValue> acc;
      bool unknown = false;
      int unknown_depth = 0;
      bool undefined = false;
      for (int a = 0; a < static_cast<int>(M.domain.size()); ++a) {
        VarEvaluation v2 = v;
        v2[phi.bound_var] = a;
        TruthOutcome o = eval_formula(M, v2, phi.sub[0]);
        if (o.kind == TruthOutcome::Kind::Undefined) {
          undefined = true;
          continue;
        }
        if (o.kind == TruthOutcome::Kind::UnknownAtDepth) {
          unknown = true;
          unknown_depth = std::max(unknown_depth, o.depth);
          continue;
        }
        // Monotone early exit: a universal branch at bottom (resp.
        // existential at top) settles the quantifier.
        if (universal && o.value == alg.bot()) return TruthOutcome::of(alg.bot());
        if (!universal && o.value == alg.top()) return TruthOutcome::of(alg.top());
        try {
          acc = acc ? (universal ? alg.meet(*acc, o.value) : alg.join(*acc, o.value))
                    : o.value;
        } catch (const UndefinedValueError&) {
          undefined = true;
        }
      }
      if (undefined) return TruthOutcome::undefined();
      if (unknown) return TruthOutcome::unknown(unknown_depth);
      if (!acc) throw SemanticsError("quantifier over empty domain");
      return TruthOutcome::of(*acc);
    }
  }
  throw std::logic_error("unreachable");
}

TruthOutcome eval_sentence(const FuzzyStructure& M, const Formula& phi) {
  return eval_formula(M, {}, phi);
}

ModelCheckResult is_model(const FuzzyStructure& M, const std::vector<Formula>& Phi) {
  ModelCheckResult result;
  result.verdict = ModelCheckResult::Verdict::Yes;
  bool saw_unknown = false;
  for (const Formula& phi : Phi) {
    std::set<std::string> fvset = free_vars(phi);
    std::vector<std::string> fv(fvset.begin(), fvset.end());
    int n = static_cast<int>(M.domain.size());
    int k = static_cast<int>(fv.size());
    std::vector<int> idx(k, 0);
    while (true) {
      VarEvaluation v;
      for (int i = 0; i < k; ++i) v[fv[i]] = idx[i];
      TruthOutcome o = eval_formula(M, v, phi);
      if (o.kind == TruthOutcome::Kind::Value) {
        if (o.value != M.algebra->top()) {
          result.verdict = ModelCheckResult::Verdict::No;
          result.witness_formula = phi;
          result.witness_assignment = v;
          result.witness_value = o;
          return result;
        }
      } else {
        saw_unknown = true;
      }
      int i = 0;
      for (; i < k; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
      if (i == k) break;
      if (k == 0) break;
    }
  }
  if (saw_unknown) result.verdict = ModelCheckResult::Verdict::Unknown;
  return result;
}

// -- Structure files --------------------------------------------------------

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Entries of the form (e1, e2)->target, whitespace separated.
std::vector<std::pair<std::vector<std::string>, std::string>> parse_entries(
    const std::string& text, int lineno) {
  std::vector<std::pair<std::vector<std::string>, std::string>> out;
  size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos >= text.size()) break;
    if (text[pos] != '(')
      throw SemanticsError("line " + std::to_string(lineno) +
                           ": expected '(' in table entry");
    size_t close = text.find(')', pos);
    if (close == std::string::npos)
      throw SemanticsError("line " + std::to_string(lineno) + ": unclosed '('");
    std::string argtext = text.substr(pos + 1, close - pos - 1);
    std::vector<std::string> args;
    std::istringstream as(argtext);
    std::string piece;
    while (std::getline(as, piece, ',')) {
      piece = strip(piece);
      if (!piece.empty()) args.push_back(piece);
    }
    pos = close + 1;
    if (text.compare(pos, 2, "->") != 0)
      throw SemanticsError("line " + std::to_string(lineno) + ": expected '->'");
    pos += 2;
    size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])))
      ++end;
    out.emplace_back(std::move(args), text.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

}  // namespace

FuzzyStructure parse_structure(std::istream& in) {
  FuzzyStructure M;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "algebra") {
      std::string name;
      ls >> name;
      if (name == "table") {
        std::string path;
        ls >> path;
        M.algebra = load_table_algebra(path);
      } else {
        M.algebra = algebra_by_name(name);
      }
      continue;
    }
    if (head == "domain") {
      std::string e;
      while (ls >> e) M.domain.push_back(e);
      continue;
    }
    if (head == "equality") {
      std::string mode;
      ls >> mode;
      if (mode != "identity")
        throw SemanticsError("line " + std::to_string(lineno) +
                             ": expected 'equality identity'");
      M.equality_is_identity = true;
      M.sig.enable_equality();
      continue;
    }
    if (head == "const") {
      std::string name, eq, target;
      ls >> name >> eq >> target;
      if (eq != "=")
        throw SemanticsError("line " + std::to_string(lineno) + ": expected '='");
      M.sig.add_constant(name);
      M.funcs[name][{}] = M.element_index(target);
      continue;
    }
    if (head == "fun" || head == "pred") {
      std::string name, eq;
      ls >> name >> eq;
      if (eq != "=")
        throw SemanticsError("line " + std::to_string(lineno) + ": expected '='");
      std::string rest;
      std::getline(ls, rest);
      auto entries = parse_entries(rest, lineno);
      int arity = entries.empty() ? 0 : static_cast<int>(entries[0].first.size());
      if (head == "fun") {
        M.sig.add_function(name, arity);
        for (auto& [args, target] : entries) {
          std::vector<int> idx;
          for (const auto& a : args) idx.push_back(M.element_index(a));
          M.funcs[name][idx] = M.element_index(target);
        }
      } else {
        M.sig.add_predicate(name, arity);
        for (auto& [args, target] : entries) {
          std::vector<int> idx;
          for (const auto& a : args) idx.push_back(M.element_index(a));
          M.preds[name][idx] = parse_truth_value(target);
        }
      }
      continue;
    }
    throw SemanticsError("line " + std::to_string(lineno) +
                         ": unknown directive '" + head + "'");
  }
  M.validate();
  return M;
}

FuzzyStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SemanticsError("cannot open structure file: " + path);
  return parse_structure(in);
}

void write_structure(std::ostream& out, const FuzzyStructure& M) {
  out << "algebra " << M.algebra->name() << "\n";
  out << "domain";
  for (const auto& e : M.domain) out << " " << e;
  out << "\n";
  if (M.equality_is_identity) out << "equality identity\n";
  for (const auto& [name, table] : M.funcs) {
    if (M.sig.function_arity(name) == 0) {
      auto it = table.find({});
      if (it != table.end())
        out << "const " << name << " = " << M.domain[it->second] << "\n";
      continue;
    }
    out << "fun " << name << " =";
    for (const auto& [args, target] : table) {
      out << " (";
      for (size_t i = 0; i < args.size(); ++i) {
        if (i) out << ", ";
        out << M.domain[args[i]];
      }
      out << ")->" << M.domain[target];
    }
    out << "\n";
  }
  for (const auto& [name, table] : M.preds) {
    if (name == kEqualityPred && M.equality_is_identity) continue;
    out << "pred " << name << " =";
    for (const auto& [args, value] : table) {
      out << " (";
      for (size_t i = 0; i < args.size(); ++i) {
        if (i) out << ", ";
        out << M.domain[args[i]];
      }
      out << ")->" << to_string(value);
    }
    out << "\n";
  }
}

}  // namespace fuzzyhorn
