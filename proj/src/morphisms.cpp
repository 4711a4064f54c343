#include "fuzzyhorn/morphisms.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fuzzyhorn {

std::map<TruthValue, TruthValue> StructureMap::boolean_embedding(
    const MtlAlgebra& alg) {
  return {{TruthValue(0), alg.bot()}, {TruthValue(1), alg.top()}};
}

MorphismKind MorphismReport::kind() const {
  if (!is_homomorphism()) return MorphismKind::NotHomomorphism;
  if (!strict) return MorphismKind::Homomorphism;
  if (!f_injective || !g_injective) return MorphismKind::StrictHomomorphism;
  if (!f_surjective || !g_surjective) return MorphismKind::Embedding;
  return MorphismKind::Isomorphism;
}

std::string to_string(MorphismKind k) {
  switch (k) {
    case MorphismKind::NotHomomorphism: return "not-a-homomorphism";
    case MorphismKind::Homomorphism: return "homomorphism";
    case MorphismKind::StrictHomomorphism: return "strict-homomorphism";
    case MorphismKind::Embedding: return "embedding";
    case MorphismKind::Isomorphism: return "isomorphism";
  }
  return "?";
}

namespace {

// Looks up f(v); identity outside the listed points would be unsound, so
// missing points are an error.
const TruthValue& apply_f(const StructureMap& map, const TruthValue& v) {
  auto it = map.f.find(v);
  if (it == map.f.end())
    throw MorphismError("algebra map f is not defined at " + to_string(v));
  return it->second;
}

TruthValue pred_value(const FuzzyStructure& M, const std::string& pname,
                      const std::vector<int>& args) {
  if (pname == kEqualityPred && M.equality_is_identity)
    return args[0] == args[1] ? M.algebra->top() : M.algebra->bot();
  return M.preds.at(pname).at(args);
}

}  // namespace

MorphismReport check_homomorphism(const FuzzyStructure& src,
                                  const FuzzyStructure& dst,
                                  const StructureMap& map) {
  MorphismReport report;
  if (map.g.size() != src.domain.size())
    throw MorphismError("domain map g is not total on the source domain");
  for (int target : map.g)
    if (target < 0 || target >= static_cast<int>(dst.domain.size()))
      throw MorphismError("domain map g leaves the target domain");

  const MtlAlgebra& A = *src.algebra;
  const MtlAlgebra& B = *dst.algebra;

  // f must be an algebra homomorphism on its listed points.
  report.algebra_hom = true;
  try {
    if (apply_f(map, A.bot()) != B.bot() || apply_f(map, A.top()) != B.top()) {
      report.algebra_hom = false;
      report.counterexample = "f does not preserve the bounds";
    }
    for (const auto& [a, fa] : map.f) {
      if (!report.algebra_hom) break;
      for (const auto& [b, fb] : map.f) {
        struct OpCheck {
          const char* name;
          TruthValue lhs, rhs;
        };
        std::vector<OpCheck> checks;
        auto defined = [&](const TruthValue& v) { return map.f.count(v) != 0; };
        if (defined(A.meet(a, b)))
          checks.push_back({"meet", apply_f(map, A.meet(a, b)), B.meet(fa, fb)});
        if (defined(A.join(a, b)))
          checks.push_back({"join", apply_f(map, A.join(a, b)), B.join(fa, fb)});
        if (defined(A.conj(a, b)))
          checks.push_back({"conj", apply_f(map, A.conj(a, b)), B.conj(fa, fb)});
        if (defined(A.residuum(a, b)))
          checks.push_back(
              {"residuum", apply_f(map, A.residuum(a, b)), B.residuum(fa, fb)});
        for (const auto& c : checks) {
          if (c.lhs != c.rhs) {
            report.algebra_hom = false;
            report.counterexample = std::string("f fails to preserve ") + c.name +
                                    " at (" + to_string(a) + ", " + to_string(b) + ")";
            break;
          }
        }
        if (!report.algebra_hom) break;
      }
    }
  } catch (const MorphismError& e) {
    report.algebra_hom = false;
    report.counterexample = e.what();
  }

  // Function commutation: g(F_src(d...)) = F_dst(g(d)...).
  report.function_commutation = true;
  for (const auto& [fname, table] : src.funcs) {
    for (const auto& [args, result] : table) {
      std::vector<int> mapped;
      for (int a : args) mapped.push_back(map.g[a]);
      auto dst_table = dst.funcs.find(fname);
      if (dst_table == dst.funcs.end())
        throw MorphismError("target lacks function '" + fname + "'");
      auto entry = dst_table->second.find(mapped);
      if (entry == dst_table->second.end()) {
        report.function_commutation = false;
        report.counterexample = "target function '" + fname +
                                "' undefined on the image of an argument tuple";
        break;
      }
      if (entry->second != map.g[result]) {
        report.function_commutation = false;
        report.counterexample =
            "g does not commute with '" + fname + "' at (" +
            [&] {
              std::string s;
              for (size_t i = 0; i < args.size(); ++i)
                s += (i ? ", " : "") + src.domain[args[i]];
              return s;
            }() +
            ")";
        break;
      }
    }
    if (!report.function_commutation) break;
  }

  // Predicate conditions (*) and strictness.
  report.predicate_condition = true;
  report.strict = true;
  for (const auto& [pname, arity] : src.sig.predicates()) {
    int n = static_cast<int>(src.domain.size());
    std::vector<int> idx(arity, 0);
    while (true) {
      TruthValue sv = pred_value(src, pname, idx);
      std::vector<int> mapped;
      for (int a : idx) mapped.push_back(map.g[a]);
      TruthValue dv = pred_value(dst, pname, mapped);
      bool src_one = sv == A.top();
      bool dst_one = dv == B.top();
      if (src_one && !dst_one) {
        report.predicate_condition = false;
        report.strict = false;
        report.counterexample = "predicate '" + pname +
                                "' holds at 1 in the source but maps to " +
                                to_string(dv);
      }
      if (!src_one && dst_one) report.strict = false;
      int i = 0;
      for (; i < arity; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
      if (i == arity) break;
      if (arity == 0) break;
    }
    if (!report.predicate_condition) break;
  }

  // Injectivity / surjectivity.
  {
    std::set<TruthValue> f_image;
    std::set<TruthValue> f_domain;
    report.f_injective = true;
    for (const auto& [a, fa] : map.f) {
      f_domain.insert(a);
      if (!f_image.insert(fa).second) report.f_injective = false;
    }
    // Surjectivity of f is decidable only against a finite carrier.
    auto carrier = dst.algebra->carrier();
    report.f_surjective =
        carrier && f_image.size() == carrier->size() &&
        std::all_of(carrier->begin(), carrier->end(),
                    [&](const TruthValue& v) { return f_image.count(v) != 0; });

    std::set<int> g_image(map.g.begin(), map.g.end());
    report.g_injective = g_image.size() == map.g.size();
    report.g_surjective = g_image.size() == dst.domain.size();
  }

  return report;
}

ReducedReport is_reduced(const FuzzyStructure& M) {
  if (!M.sig.has_equality())
    throw MorphismError("is_reduced requires the equality symbol");
  ReducedReport report;
  int n = static_cast<int>(M.domain.size());
  for (int d = 0; d < n; ++d) {
    for (int e = 0; e < n; ++e) {
      TruthValue v = pred_value(M, kEqualityPred, {d, e});
      bool holds = v == M.algebra->top();
      if (d == e && !holds) {
        report.witness = "==(" + M.domain[d] + ", " + M.domain[d] + ") = " +
                         to_string(v) + " below 1";
        return report;
      }
      if (d != e && holds) {
        report.witness =
            "==(" + M.domain[d] + ", " + M.domain[e] + ") = 1 on distinct elements";
        return report;
      }
    }
  }
  report.reduced = true;
  return report;
}

FreeMapResult canonical_free_map(const SaturationResult& res,
                                 const TermStructure& ts,
                                 const FuzzyStructure& target,
                                 const VarEvaluation& v) {
  FreeMapResult out;
  out.map.f = StructureMap::boolean_embedding(*target.algebra);

  auto reduced = is_reduced(target);
  if (!reduced.reduced) {
    out.error = "target is not reduced: " + reduced.witness;
    return out;
  }

  out.map.g.assign(ts.structure.domain.size(), -1);
  for (size_t cls = 0; cls < ts.class_members.size(); ++cls) {
    std::optional<int> value;
    // Well-definedness: every member of the class must evaluate to the
    // same target element (this is where EQP is consumed).
    for (int id : ts.class_members[cls]) {
      const Term& t = res.universe.terms()[id];
      std::optional<int> tv;
      try {
        tv = eval_term(target, v, t);
      } catch (const SemanticsError& e) {
        out.error = std::string("cannot evaluate ") + to_string(t) + ": " + e.what();
        return out;
      }
      if (!tv) {
        out.error = "target is partial on " + to_string(t);
        return out;
      }
      if (value && *value != *tv) {
        out.error = "class " + std::to_string(cls) + " (" +
                    ts.structure.domain[cls] +
                    ") is not well-defined in the target: members evaluate to " +
                    target.domain[*value] + " and " + target.domain[*tv] +
                    " (target does not model the theory)";
        return out;
      }
      value = tv;
    }
    out.map.g[cls] = *value;
  }
  out.ok = true;
  return out;
}

UniquenessResult check_uniqueness(const SaturationResult& res,
                                  const TermStructure& ts,
                                  const FuzzyStructure& target,
                                  const VarEvaluation& v,
                                  const StructureMap& candidate) {
  UniquenessResult out;
  FreeMapResult canon = canonical_free_map(res, ts, target, v);
  if (!canon.ok) throw MorphismError("canonical map unavailable: " + canon.error);
  if (candidate.g.size() != canon.map.g.size())
    throw MorphismError("candidate map has the wrong domain size");
  // Classes are ordered by (depth, print) of their representative, so the
  // first difference is the smallest witness term.
  for (size_t cls = 0; cls < canon.map.g.size(); ++cls) {
    if (candidate.g[cls] != canon.map.g[cls]) {
      out.witness = ts.structure.domain[cls];
      return out;
    }
  }
  out.unique_match = true;
  return out;
}

void write_map(std::ostream& out, const StructureMap& map,
               const FuzzyStructure& src, const FuzzyStructure& dst) {
  for (const auto& [a, fa] : map.f)
    out << "f: " << to_string(a) << " -> " << to_string(fa) << "\n";
  for (size_t i = 0; i < map.g.size(); ++i)
    out << "g: " << src.domain[i] << " -> " << dst.domain[map.g[i]] << "\n";
}

StructureMap parse_map(std::istream& in, const FuzzyStructure& src,
                       const FuzzyStructure& dst) {
  StructureMap map;
  map.g.assign(src.domain.size(), -1);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head, from, arrow, to;
    if (!(ls >> head)) continue;
    if (!(ls >> from >> arrow >> to) || arrow != "->")
      throw MorphismError("map file line " + std::to_string(lineno) +
                          ": expected '<kind>: a -> b'");
    if (head == "f:") {
      map.f[parse_truth_value(from)] = parse_truth_value(to);
    } else if (head == "g:") {
      try {
        map.g[src.element_index(from)] = dst.element_index(to);
      } catch (const SemanticsError& e) {
        throw MorphismError("map file line " + std::to_string(lineno) + ": " +
                            e.what());
      }
    } else {
      throw MorphismError("map file line " + std::to_string(lineno) +
                          ": unknown entry '" + head + "'");
    }
  }
  for (int t : map.g)
    if (t < 0) throw MorphismError("map file leaves g partial on the source domain");
  return map;
}

}  // namespace fuzzyhorn
