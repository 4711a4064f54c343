// Command-line front end: classify theories, saturate them into term
// structures, evaluate formulas in fuzzy structures, extract Herbrand
// models, check homomorphisms, and reproduce the bundled worked examples.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fuzzyhorn/herbrand.hpp"
#include "fuzzyhorn/morphisms.hpp"
#include "fuzzyhorn/parser.hpp"
#include "fuzzyhorn/saturation.hpp"
#include "fuzzyhorn/semantics.hpp"

namespace fh = fuzzyhorn;

namespace {

// Exit codes: 0 success/verified, 1 semantic failure, 2 usage/parse error.
constexpr int kOk = 0;
constexpr int kSemanticFailure = 1;
constexpr int kUsageError = 2;

struct Options {
  std::string format = "text";
  bool decimal = false;
  int depth = 2;
  int frozen_vars = 0;
};

bool machine(const Options& o) { return o.format == "machine"; }

std::string show(const fh::TruthValue& v, const Options& o) {
  return o.decimal ? fh::to_decimal_string(v) : fh::to_string(v);
}

std::string show(const fh::TruthOutcome& v, const Options& o) {
  if (v.is_value()) return show(v.value, o);
  return fh::to_string(v);
}

int cmd_classify(const std::string& path, const Options& opt) {
  fh::Theory th = fh::load_theory(path);
  bool all_clauses = true;
  for (size_t i = 0; i < th.formulas.size(); ++i) {
    fh::HornClass hc = fh::classify_horn(th.formulas[i]);
    std::string tag = fh::horn_tag(hc);
    if (machine(opt)) {
      std::cout << "classify line=" << th.lines[i] << " tag=" << tag
                << " horn_clause=" << (hc.is_horn_clause() ? 1 : 0)
                << " w_horn_clause=" << (hc.is_w_horn_clause() ? 1 : 0) << "\n";
    } else {
      std::cout << "line " << th.lines[i] << ": " << fh::to_string(th.formulas[i])
                << "\n  " << tag << "  [rank " << fh::rank(th.raw_formulas[i])
                << ", normalized rank " << fh::rank(th.formulas[i]) << "]\n";
    }
    if (!hc.is_any_horn_clause()) all_clauses = false;
  }
  return all_clauses ? kOk : kSemanticFailure;
}

int cmd_saturate(const std::string& path, const std::string& out_prefix,
                 const Options& opt) {
  fh::Theory th = fh::load_theory(path);
  fh::SaturationConfig config;
  config.depth = opt.depth;
  config.frozen_vars = opt.frozen_vars;
  fh::SaturationResult res = fh::saturate(th.formulas, th.sig, config);

  if (res.atoms.bottom_derived) {
    if (machine(opt))
      std::cout << "saturate consistent=0\n";
    else
      std::cout << "inconsistent: bot derived\n";
    return kSemanticFailure;
  }

  fh::TermStructure ts = fh::build_term_structure(res);
  size_t num_atoms = res.atoms.atoms().size();
  size_t num_classes = ts.structure.domain.size();
  if (machine(opt)) {
    std::cout << "saturate consistent=1 atoms=" << num_atoms
              << " classes=" << num_classes << " complete=" << (res.complete ? 1 : 0)
              << " rounds=" << res.rounds << "\n";
  } else {
    std::cout << "consistent, " << num_atoms << " derived atom(s), " << num_classes
              << " class(es), " << (res.complete ? "complete" : "truncated")
              << " after " << res.rounds << " round(s)\n";
    std::cout << "classes:\n";
    fh::write_classes(std::cout, ts);
  }
  if (!out_prefix.empty()) {
    std::ofstream sf(out_prefix + ".structure");
    fh::write_structure(sf, ts.structure);
    std::ofstream cf(out_prefix + ".classes");
    fh::write_classes(cf, ts);
  }
  return kOk;
}

int cmd_eval(const std::string& structure_path, const std::string& formula_text,
             const Options& opt) {
  fh::FuzzyStructure M = fh::load_structure(structure_path);
  fh::Formula phi = fh::parse_formula(formula_text, M.sig);
  auto fv = fh::free_vars(phi);
  if (!fv.empty()) {
    std::cerr << "error: eval expects a sentence; free: ";
    for (const auto& v : fv) std::cerr << v << " ";
    std::cerr << "\n";
    return kUsageError;
  }
  fh::TruthOutcome o = fh::eval_sentence(M, phi);
  if (machine(opt))
    std::cout << "eval value=" << show(o, opt) << "\n";
  else
    std::cout << show(o, opt) << "\n";
  return o.is_value() ? kOk : kSemanticFailure;
}

int cmd_model_check(const std::string& structure_path, const std::string& theory_path,
                    const Options& opt) {
  fh::FuzzyStructure M = fh::load_structure(structure_path);
  fh::Theory th = fh::load_theory(theory_path);
  fh::ModelCheckResult r = fh::is_model(M, th.formulas);
  switch (r.verdict) {
    case fh::ModelCheckResult::Verdict::Yes:
      std::cout << (machine(opt) ? "model=yes" : "yes: a model of the theory") << "\n";
      return kOk;
    case fh::ModelCheckResult::Verdict::Unknown:
      std::cout << (machine(opt) ? "model=unknown" : "unknown (partial evaluation)")
                << "\n";
      return kSemanticFailure;
    case fh::ModelCheckResult::Verdict::No:
      if (machine(opt)) {
        std::cout << "model=no formula=" << fh::to_string(*r.witness_formula)
                  << " value=" << show(r.witness_value, opt) << "\n";
      } else {
        std::cout << "no: " << fh::to_string(*r.witness_formula) << " evaluates to "
                  << show(r.witness_value, opt);
        if (!r.witness_assignment.empty()) {
          std::cout << " under";
          for (const auto& [var, el] : r.witness_assignment)
            std::cout << " " << var << "=" << M.domain[el];
        }
        std::cout << "\n";
      }
      return kSemanticFailure;
  }
  return kSemanticFailure;
}

int cmd_herbrand(const std::string& theory_path, const std::string& out_prefix,
                 const Options& opt) {
  fh::Theory th = fh::load_theory(theory_path);
  fh::SaturationConfig config;
  config.depth = opt.depth;
  fh::HStructure h = fh::least_h_model(th.formulas, th.sig, config);
  if (machine(opt)) {
    std::cout << "herbrand atoms=" << h.atoms.size() << "\n";
    for (const fh::Formula& a : h.atoms)
      std::cout << "atom " << fh::to_string(a) << "\n";
  } else {
    std::cout << "least H-model, " << h.atoms.size() << " atom(s):\n";
    fh::write_atom_set(std::cout, h);
  }
  if (!out_prefix.empty()) {
    std::ofstream sf(out_prefix + ".structure");
    fh::write_structure(sf, h.structure);
    std::ofstream af(out_prefix + ".atoms");
    fh::write_atom_set(af, h);
  }
  return kOk;
}

int cmd_hom_check(const std::string& src_path, const std::string& dst_path,
                  const std::string& map_path, const Options& opt) {
  fh::FuzzyStructure src = fh::load_structure(src_path);
  fh::FuzzyStructure dst = fh::load_structure(dst_path);
  std::ifstream mf(map_path);
  if (!mf) throw std::runtime_error("cannot open map file: " + map_path);
  fh::StructureMap map = fh::parse_map(mf, src, dst);
  fh::MorphismReport report = fh::check_homomorphism(src, dst, map);
  if (machine(opt)) {
    std::cout << "hom kind=" << fh::to_string(report.kind())
              << " algebra_hom=" << report.algebra_hom
              << " function_commutation=" << report.function_commutation
              << " predicate_condition=" << report.predicate_condition
              << " strict=" << report.strict << "\n";
  } else {
    std::cout << fh::to_string(report.kind()) << "\n";
    if (!report.counterexample.empty())
      std::cout << "counterexample: " << report.counterexample << "\n";
  }
  return report.is_homomorphism() ? kOk : kSemanticFailure;
}

int cmd_free_hom(const std::string& theory_path, const std::string& target_path,
                 const std::string& assign, const Options& opt) {
  fh::Theory th = fh::load_theory(theory_path);
  fh::FuzzyStructure target = fh::load_structure(target_path);
  fh::SaturationConfig config;
  config.depth = opt.depth;
  config.frozen_vars = opt.frozen_vars;
  fh::SaturationResult res = fh::saturate(th.formulas, th.sig, config);
  if (res.atoms.bottom_derived) {
    std::cout << "inconsistent: bot derived\n";
    return kSemanticFailure;
  }
  fh::TermStructure ts = fh::build_term_structure(res);

  fh::VarEvaluation v;
  if (!assign.empty()) {
    std::istringstream as(assign);
    std::string pair;
    while (std::getline(as, pair, ',')) {
      size_t eq = pair.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("bad --assign entry '" + pair + "'");
      v[pair.substr(0, eq)] = target.element_index(pair.substr(eq + 1));
    }
  }

  fh::ModelCheckResult mc = fh::is_model(target, th.formulas);
  if (!mc.yes()) {
    std::cout << "target is not a model of the theory\n";
    return kSemanticFailure;
  }
  fh::FreeMapResult fm = fh::canonical_free_map(res, ts, target, v);
  if (!fm.ok) {
    std::cout << "free map construction failed: " << fm.error << "\n";
    return kSemanticFailure;
  }
  fh::MorphismReport report = fh::check_homomorphism(ts.structure, target, fm.map);
  if (machine(opt)) {
    std::cout << "free_hom kind=" << fh::to_string(report.kind()) << "\n";
  } else {
    std::cout << "canonical free homomorphism (" << fh::to_string(report.kind())
              << "):\n";
  }
  fh::write_map(std::cout, fm.map, ts.structure, target);
  return report.is_homomorphism() ? kOk : kSemanticFailure;
}

// -- Worked examples --------------------------------------------------------

struct ReproCheck {
  std::string label;
  std::string expected;
  std::string actual;
  bool pass() const { return expected == actual; }
};

int report_repro(const std::vector<ReproCheck>& checks, const Options& opt) {
  bool all = true;
  for (const auto& c : checks) {
    if (machine(opt)) {
      std::cout << "repro check=" << c.label << " expected=" << c.expected
                << " actual=" << c.actual << " pass=" << (c.pass() ? 1 : 0) << "\n";
    } else {
      std::cout << (c.pass() ? "  ok  " : "  FAIL") << "  " << c.label
                << ": expected " << c.expected << ", got " << c.actual << "\n";
    }
    all = all && c.pass();
  }
  return all ? kOk : kSemanticFailure;
}

// Godel algebra, ||P(cbar)|| = 4/5, theory {~(P(cbar) -> bot)}: the theory
// holds at 1 in the structure while P(cbar) -> bot is 0; the term structure
// with empty atom base gives P(cbar) value 0 and P(cbar) -> bot value 1.
int repro_godel(const Options& opt) {
  fh::Signature sig;
  sig.add_predicate("P", 1);
  sig.add_constant("cbar");

  fh::FuzzyStructure M;
  M.algebra = fh::godel();
  M.sig = sig;
  M.domain = {"m"};
  M.funcs["cbar"][{}] = 0;
  M.preds["P"][{0}] = fh::TruthValue(4, 5);

  fh::Formula phi = fh::parse_formula("P(cbar) -> bot", sig);
  fh::Formula theory = fh::parse_formula("~(P(cbar) -> bot)", sig);

  std::vector<ReproCheck> checks;
  checks.push_back({"value of theory formula in M", "1",
                    fh::to_string(fh::eval_sentence(M, theory))});
  checks.push_back({"value of P(cbar) -> bot in M", "0",
                    fh::to_string(fh::eval_sentence(M, phi))});

  fh::SaturationConfig config;
  config.depth = 0;
  fh::TermStructure ts =
      fh::build_term_structure_from_atoms({}, {}, sig, config);
  checks.push_back({"term-structure value of P(cbar)", "0",
                    fh::to_string(fh::eval_sentence(
                        ts.structure, fh::parse_formula("P(cbar)", sig)))});
  checks.push_back({"term-structure value of P(cbar) -> bot", "1",
                    fh::to_string(fh::eval_sentence(ts.structure, phi))});
  return report_repro(checks, opt);
}

// Lukasiewicz: P1(c)=1, P2(c)=9/10, P3(c)=1/2 give the clause value 3/5 in
// M, H = {P1(c)}, and value 1 in the induced H-structure.
int repro_lukasiewicz(const Options& opt) {
  fh::Signature sig;
  sig.add_predicate("P1", 1);
  sig.add_predicate("P2", 1);
  sig.add_predicate("P3", 1);
  sig.add_constant("c");

  fh::FuzzyStructure M;
  M.algebra = fh::lukasiewicz();
  M.sig = sig;
  M.domain = {"m"};
  M.funcs["c"][{}] = 0;
  M.preds["P1"][{0}] = fh::TruthValue(1);
  M.preds["P2"][{0}] = fh::TruthValue(9, 10);
  M.preds["P3"][{0}] = fh::TruthValue(1, 2);

  fh::Formula phi = fh::parse_formula("P1(c) & P2(c) -> P3(c)", sig);

  std::vector<ReproCheck> checks;
  checks.push_back(
      {"clause value in M", "3/5", fh::to_string(fh::eval_sentence(M, phi))});

  fh::HStructure h = fh::h_structure_of_model(M, sig, 0);
  std::ostringstream atoms;
  for (size_t i = 0; i < h.atoms.size(); ++i)
    atoms << (i ? ", " : "") << fh::to_string(h.atoms[i]);
  checks.push_back({"extracted atom set H", "P1(c)", atoms.str()});
  checks.push_back({"clause value in the H-structure", "1",
                    fh::to_string(fh::eval_sentence(h.structure, phi))});
  return report_repro(checks, opt);
}

// Two-element Lukasiewicz witness: (forall x) P(x) & (forall x) Q(x) takes
// value 0 while (forall x)(P(x) & Q(x)) takes value 1/2.
int repro_forall_strong_conj(const Options& opt) {
  fh::Signature sig;
  sig.add_predicate("P", 1);
  sig.add_predicate("Q", 1);

  fh::FuzzyStructure M;
  M.algebra = fh::lukasiewicz();
  M.sig = sig;
  M.domain = {"d1", "d2"};
  M.preds["P"][{0}] = fh::TruthValue(1, 2);
  M.preds["P"][{1}] = fh::TruthValue(1);
  M.preds["Q"][{0}] = fh::TruthValue(1);
  M.preds["Q"][{1}] = fh::TruthValue(1, 2);

  fh::Formula lhs = fh::parse_formula("(forall x. P(x)) & (forall x. Q(x))", sig);
  fh::Formula rhs = fh::parse_formula("forall x. (P(x) & Q(x))", sig);

  std::vector<ReproCheck> checks;
  checks.push_back({"(forall x)P(x) & (forall x)Q(x)", "0",
                    fh::to_string(fh::eval_sentence(M, lhs))});
  checks.push_back({"forall x. (P(x) & Q(x))", "1/2",
                    fh::to_string(fh::eval_sentence(M, rhs))});
  return report_repro(checks, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horn-fragment toolkit for predicate fuzzy logics"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "Output format: text|machine")
      ->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--decimal", opt.decimal, "Print truth values as decimals");
  app.add_option("--depth", opt.depth, "Term universe depth bound");
  app.add_option("--frozen-vars", opt.frozen_vars,
                 "Number of frozen variables v1..vm");

  std::string theory_path, structure_path, dst_path, map_path, formula_text,
      out_prefix, assign, example;

  auto* classify = app.add_subcommand("classify", "Classify a theory's formulas");
  classify->add_option("theory", theory_path)->required();

  auto* saturate = app.add_subcommand("saturate", "Saturate a Horn theory");
  saturate->add_option("theory", theory_path)->required();
  saturate->add_option("--out", out_prefix, "Write <out>.structure and <out>.classes");

  auto* eval = app.add_subcommand("eval", "Evaluate a sentence in a structure");
  eval->add_option("--structure", structure_path)->required();
  eval->add_option("formula", formula_text)->required();

  auto* model_check = app.add_subcommand("model-check", "Check a structure models a theory");
  model_check->add_option("--structure", structure_path)->required();
  model_check->add_option("theory", theory_path)->required();

  auto* herbrand = app.add_subcommand("herbrand", "Least H-model of an equality-free Horn theory");
  herbrand->add_option("theory", theory_path)->required();
  herbrand->add_option("--out", out_prefix, "Write <out>.structure and <out>.atoms");

  auto* hom_check = app.add_subcommand("hom-check", "Check a structure map");
  hom_check->add_option("--src", structure_path)->required();
  hom_check->add_option("--dst", dst_path)->required();
  hom_check->add_option("--map", map_path)->required();

  auto* free_hom = app.add_subcommand("free-hom", "Canonical free homomorphism");
  free_hom->add_option("theory", theory_path)->required();
  free_hom->add_option("--target", dst_path)->required();
  free_hom->add_option("--assign", assign, "v1=element,v2=element,...");

  auto* repro = app.add_subcommand("repro", "Reproduce a worked example");
  repro->add_option("example", example)
      ->required()
      ->check(CLI::IsMember({"godel-0.8", "lukasiewicz-0.6", "forall-strong-conj"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (classify->parsed()) return cmd_classify(theory_path, opt);
    if (saturate->parsed()) return cmd_saturate(theory_path, out_prefix, opt);
    if (eval->parsed()) return cmd_eval(structure_path, formula_text, opt);
    if (model_check->parsed())
      return cmd_model_check(structure_path, theory_path, opt);
    if (herbrand->parsed()) return cmd_herbrand(theory_path, out_prefix, opt);
    if (hom_check->parsed())
      return cmd_hom_check(structure_path, dst_path, map_path, opt);
    if (free_hom->parsed())
      return cmd_free_hom(theory_path, dst_path, assign, opt);
    if (repro->parsed()) {
      if (example == "godel-0.8") return repro_godel(opt);
      if (example == "lukasiewicz-0.6") return repro_lukasiewicz(opt);
      return repro_forall_strong_conj(opt);
    }
  } catch (const fh::ParseError& e) {
    std::cerr << "parse error";
    if (e.line > 0) std::cerr << " at line " << e.line;
    std::cerr << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemanticFailure;
  }
  return kUsageError;
}
