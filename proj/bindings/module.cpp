#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fuzzyhorn/herbrand.hpp"
#include "fuzzyhorn/morphisms.hpp"
#include "fuzzyhorn/parser.hpp"
#include "fuzzyhorn/saturation.hpp"

namespace py = pybind11;
using namespace fuzzyhorn;

namespace {

SaturationConfig make_config(int depth, int frozen_vars) {
  SaturationConfig c;
  c.depth = depth;
  c.frozen_vars = frozen_vars;
  return c;
}

FuzzyStructure structure_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_structure(in);
}

py::list classify_theory(const std::string& theory_text) {
  Theory th = parse_theory_text(theory_text);
  py::list out;
  for (size_t i = 0; i < th.formulas.size(); ++i) {
    py::dict d;
    d["formula"] = to_string(th.formulas[i]);
    d["tag"] = horn_tag(classify_horn(th.formulas[i]));
    d["rank"] = rank(th.raw_formulas[i]);
    d["normalized_rank"] = rank(th.formulas[i]);
    d["line"] = th.lines[i];
    out.append(d);
  }
  return out;
}

std::string eval_in_structure(const std::string& structure_text,
                              const std::string& formula) {
  FuzzyStructure M = structure_from_text(structure_text);
  Formula phi = parse_formula(formula, M.sig);
  return to_string(eval_sentence(M, phi));
}

py::dict model_check(const std::string& structure_text,
                     const std::string& theory_text) {
  FuzzyStructure M = structure_from_text(structure_text);
  Theory th = parse_theory_text(theory_text);
  ModelCheckResult r = is_model(M, th.formulas);
  py::dict out;
  switch (r.verdict) {
    case ModelCheckResult::Verdict::Yes: out["verdict"] = "yes"; break;
    case ModelCheckResult::Verdict::No: out["verdict"] = "no"; break;
    case ModelCheckResult::Verdict::Unknown: out["verdict"] = "unknown"; break;
  }
  if (r.witness_formula) {
    out["witness_formula"] = to_string(*r.witness_formula);
    out["witness_value"] = to_string(r.witness_value);
  }
  return out;
}

py::dict saturate_theory(const std::string& theory_text, int depth,
                         int frozen_vars) {
  Theory th = parse_theory_text(theory_text);
  SaturationResult res =
      saturate(th.formulas, th.sig, make_config(depth, frozen_vars));
  TermStructure ts = build_term_structure(res);
  py::dict out;
  out["consistent"] = !res.atoms.bottom_derived;
  out["complete"] = res.complete;
  out["rounds"] = res.rounds;
  py::list atoms;
  for (const Atom& a : res.atoms.atoms()) {
    std::string s = a.pred + "(";
    for (size_t i = 0; i < a.args.size(); ++i)
      s += (i ? ", " : "") + to_string(res.universe.terms()[a.args[i]]);
    atoms.append(s + ")");
  }
  out["atoms"] = atoms;
  out["classes"] = ts.class_member_names;
  return out;
}

py::list least_h_model_atoms(const std::string& theory_text, int depth) {
  Theory th = parse_theory_text(theory_text);
  HStructure h = least_h_model(th.formulas, th.sig, make_config(depth, 0));
  py::list out;
  for (const Formula& a : h.atoms) out.append(to_string(a));
  return out;
}

py::dict free_hom(const std::string& theory_text,
                  const std::string& target_text, int depth, int frozen_vars) {
  Theory th = parse_theory_text(theory_text);
  FuzzyStructure target = structure_from_text(target_text);
  SaturationResult res =
      saturate(th.formulas, th.sig, make_config(depth, frozen_vars));
  TermStructure ts = build_term_structure(res);
  FreeMapResult fm = canonical_free_map(res, ts, target, {});
  py::dict out;
  out["ok"] = fm.ok;
  if (!fm.ok) {
    out["error"] = fm.error;
    return out;
  }
  MorphismReport rep = check_homomorphism(ts.structure, target, fm.map);
  out["kind"] = to_string(rep.kind());
  py::dict g;
  for (size_t i = 0; i < fm.map.g.size(); ++i)
    g[py::str(ts.structure.domain[i])] = target.domain[fm.map.g[i]];
  out["g"] = g;
  return out;
}

std::string algebra_op(const std::string& algebra, const std::string& op,
                       const std::string& a, const std::string& b) {
  auto alg = algebra_by_name(algebra);
  TruthValue x = parse_truth_value(a), y = parse_truth_value(b);
  if (op == "conj") return to_string(alg->conj(x, y));
  if (op == "residuum") return to_string(alg->residuum(x, y));
  if (op == "meet") return to_string(alg->meet(x, y));
  if (op == "join") return to_string(alg->join(x, y));
  throw AlgebraError("unknown operation '" + op + "'");
}

}  // namespace

PYBIND11_MODULE(_fuzzyhorn, m) {
  m.doc() = "Fuzzy universal Horn theories: classification, evaluation, "
            "saturation, Herbrand models and free homomorphisms";

  m.def("classify", &classify_theory, py::arg("theory"),
        "Classify each formula of a theory text; returns per-formula dicts "
        "with tag and rank.");
  m.def("eval", &eval_in_structure, py::arg("structure"), py::arg("formula"),
        "Evaluate a sentence in a structure given in the structure file "
        "format; returns the exact value as a string.");
  m.def("model_check", &model_check, py::arg("structure"), py::arg("theory"),
        "Check whether the structure is a model of the theory.");
  m.def("saturate", &saturate_theory, py::arg("theory"), py::arg("depth") = 2,
        py::arg("frozen_vars") = 0,
        "Saturate a universal Horn theory; returns derived atoms and the "
        "term-structure classes.");
  m.def("least_h_model", &least_h_model_atoms, py::arg("theory"),
        py::arg("depth") = 2,
        "Ground atoms of the least H-model of an equality-free Horn theory.");
  m.def("free_hom", &free_hom, py::arg("theory"), py::arg("target"),
        py::arg("depth") = 2, py::arg("frozen_vars") = 0,
        "Canonical homomorphism from the term structure of a Horn theory "
        "into a reduced target model.");
  m.def("algebra_op", &algebra_op, py::arg("algebra"), py::arg("op"),
        py::arg("a"), py::arg("b"),
        "Apply conj/residuum/meet/join of a bundled algebra to two exact "
        "rational values.");

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<AlgebraError>(m, "AlgebraError");
  py::register_exception<SemanticsError>(m, "SemanticsError");
  py::register_exception<SaturationError>(m, "SaturationError");
  py::register_exception<HerbrandError>(m, "HerbrandError");
  py::register_exception<MorphismError>(m, "MorphismError");
}
