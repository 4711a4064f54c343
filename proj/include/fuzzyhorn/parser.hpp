#ifndef FUZZYHORN_PARSER_HPP
#define FUZZYHORN_PARSER_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzyhorn/syntax.hpp"

namespace fuzzyhorn {

struct ParseError : std::runtime_error {
  int position;  // byte offset into the input text
  int line;      // 1-based, for theory files; 0 for single-formula parses
  ParseError(const std::string& msg, int pos, int ln = 0)
      : std::runtime_error(msg), position(pos), line(ln) {}
};

/// Parses a single formula in the surface syntax and normalizes it
/// (~ and <-> expanded). Symbols must be declared in sig; lowercase
/// identifiers not declared as functions are read as variables.
Formula parse_formula(const std::string& text, const Signature& sig);

/// Raw parse without normalization; Not/Iff nodes are preserved so rank
/// can be computed on the original shape.
Formula parse_formula_raw(const std::string& text, const Signature& sig);

/// A theory file: a signature header followed by one formula per line.
struct Theory {
  Signature sig;
  std::vector<Formula> formulas;       // normalized
  std::vector<Formula> raw_formulas;   // as written
  std::vector<int> lines;              // source line per formula
};

/// Header directives: `pred P/2`, `fun f/1`, `const c`, `equality on|off`.
/// `#` starts a comment; formulas follow, one per line.
Theory parse_theory(std::istream& in);
Theory parse_theory_text(const std::string& text);
Theory load_theory(const std::string& path);

}  // namespace fuzzyhorn

#endif
