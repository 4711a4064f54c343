#include "fuzzyhorn/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fuzzyhorn {

namespace {

enum class Tok {
  Ident, LParen, RParen, Comma, Dot,
  Amp, WAnd, WOr, Arrow, Iff, Not, Eq,
  Bot, Top, Forall, Exists, End
};

struct Token {
  Tok kind;
  std::string text;
  int pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    int start = static_cast<int>(pos_);
    if (pos_ >= text_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    auto match = [&](const std::string& s, Tok kind) {
      if (text_.compare(pos_, s.size(), s) == 0) {
        pos_ += s.size();
        current_ = {kind, s, start};
        return true;
      }
      return false;
    };
    // Multi-byte operators first; UTF-8 aliases accepted alongside ASCII.
    if (match("<->", Tok::Iff)) return;
    if (match("->", Tok::Arrow)) return;
    if (match("/\\", Tok::WAnd)) return;
    if (match("\\/", Tok::WOr)) return;
    if (match("==", Tok::Eq)) return;
    if (match("↔", Tok::Iff)) return;     // <->
    if (match("→", Tok::Arrow)) return;   // ->
    if (match("∧", Tok::WAnd)) return;    // /\ (weak)
    if (match("∨", Tok::WOr)) return;     // \/
    if (match("≈", Tok::Eq)) return;      // ==
    if (match("¬", Tok::Not)) return;     // ~
    if (match("∀", Tok::Forall)) return;  // forall
    if (match("∃", Tok::Exists)) return;  // exists
    if (match("⊥", Tok::Bot)) return;
    if (match("⊤", Tok::Top)) return;
    char c = text_[pos_];
    switch (c) {
      case '(': ++pos_; current_ = {Tok::LParen, "(", start}; return;
      case ')': ++pos_; current_ = {Tok::RParen, ")", start}; return;
      case ',': ++pos_; current_ = {Tok::Comma, ",", start}; return;
      case '.': ++pos_; current_ = {Tok::Dot, ".", start}; return;
      case '&': ++pos_; current_ = {Tok::Amp, "&", start}; return;
      case '~': ++pos_; current_ = {Tok::Not, "~", start}; return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      std::string word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "bot") { current_ = {Tok::Bot, word, start}; return; }
      if (word == "top") { current_ = {Tok::Top, word, start}; return; }
      if (word == "forall") { current_ = {Tok::Forall, word, start}; return; }
      if (word == "exists") { current_ = {Tok::Exists, word, start}; return; }
      current_ = {Tok::Ident, word, start};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  const std::string& text_;
  size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig) : lex_(text), sig_(sig) {}

  Formula parse() {
    Formula f = parse_implication();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("trailing input after formula", lex_.peek().pos);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex_.peek().pos);
  }

  void expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind) fail(std::string("expected ") + what);
    lex_.take();
  }

  // implication level: a -> b right-assoc; a <-> b non-assoc, same level.
  Formula parse_implication() {
    Formula lhs = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Formula::binary(Connective::Implies, std::move(lhs), parse_implication());
    }
    if (lex_.peek().kind == Tok::Iff) {
      lex_.take();
      Formula rhs = parse_or();
      return Formula::iff(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_weak_and();
    while (lex_.peek().kind == Tok::WOr) {
      lex_.take();
      f = Formula::binary(Connective::Or, std::move(f), parse_weak_and());
    }
    return f;
  }

  Formula parse_weak_and() {
    Formula f = parse_strong_and();
    while (lex_.peek().kind == Tok::WAnd) {
      lex_.take();
      f = Formula::binary(Connective::Weak, std::move(f), parse_strong_and());
    }
    return f;
  }

  Formula parse_strong_and() {
    Formula f = parse_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      f = Formula::binary(Connective::Strong, std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (lex_.peek().kind) {
      case Tok::Not:
        lex_.take();
        return Formula::negation(parse_unary());
      case Tok::Forall:
      case Tok::Exists: {
        bool universal = lex_.take().kind == Tok::Forall;
        Token var = lex_.peek();
        if (var.kind != Tok::Ident) fail("expected variable after quantifier");
        if (sig_.has_function(var.text) || sig_.has_predicate(var.text))
          throw ParseError("quantified variable '" + var.text +
                               "' clashes with a declared symbol",
                           var.pos);
        lex_.take();
        expect(Tok::Dot, "'.' after quantified variable");
        Formula body = parse_unary_or_implication();
        return universal ? Formula::forall(var.text, std::move(body))
                         : Formula::exists(var.text, std::move(body));
      }
      default:
        return parse_atomic();
    }
  }

  // A quantifier body extends as far right as possible.
  Formula parse_unary_or_implication() { return parse_implication(); }

  Formula parse_atomic() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Bot:
        lex_.take();
        return Formula::bot();
      case Tok::Top:
        lex_.take();
        return Formula::top();
      case Tok::LParen: {
        lex_.take();
        Formula f = parse_implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        if (std::isupper(static_cast<unsigned char>(t.text[0])))
          return parse_predicate_atom();
        // Lowercase start: a term, which must continue as `t == t`.
        Term lhs = parse_term();
        return parse_equality_tail(std::move(lhs), t.pos);
      }
      default:
        fail("expected a formula");
    }
  }

  Formula parse_predicate_atom() {
    Token name = lex_.take();
    if (!sig_.has_predicate(name.text))
      throw ParseError("undeclared predicate '" + name.text + "'", name.pos);
    int arity = sig_.predicate_arity(name.text);
    std::vector<Term> args;
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      args.push_back(parse_term());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        args.push_back(parse_term());
      }
      expect(Tok::RParen, "')'");
    }
    if (static_cast<int>(args.size()) != arity)
      throw ParseError("predicate '" + name.text + "' expects " +
                           std::to_string(arity) + " argument(s), got " +
                           std::to_string(args.size()),
                       name.pos);
    return Formula::atom(name.text, std::move(args));
  }

  Formula parse_equality_tail(Term lhs, int pos) {
    if (lex_.peek().kind != Tok::Eq)
      throw ParseError("expected '==' after term", lex_.peek().pos);
    if (!sig_.has_equality())
      throw ParseError("equality used but not enabled in the signature", pos);
    lex_.take();
    Term rhs = parse_term();
    return Formula::atom(kEqualityPred, {std::move(lhs), std::move(rhs)});
  }

  Term parse_term() {
    Token name = lex_.peek();
    if (name.kind != Tok::Ident) fail("expected a term");
    if (std::isupper(static_cast<unsigned char>(name.text[0])))
      throw ParseError("'" + name.text + "' is not a term (terms start lowercase)",
                       name.pos);
    lex_.take();
    if (lex_.peek().kind == Tok::LParen) {
      if (!sig_.has_function(name.text))
        throw ParseError("undeclared function '" + name.text + "'", name.pos);
      lex_.take();
      std::vector<Term> args;
      args.push_back(parse_term());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        args.push_back(parse_term());
      }
      expect(Tok::RParen, "')'");
      int arity = sig_.function_arity(name.text);
      if (static_cast<int>(args.size()) != arity)
        throw ParseError("function '" + name.text + "' expects " +
                             std::to_string(arity) + " argument(s), got " +
                             std::to_string(args.size()),
                         name.pos);
      return Term::app(name.text, std::move(args));
    }
    if (sig_.has_function(name.text)) {
      if (sig_.function_arity(name.text) != 0)
        throw ParseError("function '" + name.text + "' needs arguments", name.pos);
      return Term::app(name.text);
    }
    return Term::var(name.text);
  }

  Lexer lex_;
  const Signature& sig_;
};

}  // namespace

Formula parse_formula_raw(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  return p.parse();
}

Formula parse_formula(const std::string& text, const Signature& sig) {
  return normalize(parse_formula_raw(text, sig));
}

// -- Theory files -----------------------------------------------------------

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// `name/arity` for pred and fun directives.
std::pair<std::string, int> parse_decl(const std::string& body, int line) {
  size_t slash = body.find('/');
  if (slash == std::string::npos)
    throw ParseError("expected name/arity", 0, line);
  std::string name = strip(body.substr(0, slash));
  std::string ar = strip(body.substr(slash + 1));
  try {
    return {name, std::stoi(ar)};
  } catch (const std::exception&) {
    throw ParseError("bad arity '" + ar + "'", 0, line);
  }
}

}  // namespace

Theory parse_theory(std::istream& in) {
  Theory th;
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
    if (head == "pred") {
      auto [name, arity] = parse_decl(strip(line.substr(4)), lineno);
      th.sig.add_predicate(name, arity);
      continue;
    }
    if (head == "fun") {
      auto [name, arity] = parse_decl(strip(line.substr(3)), lineno);
      th.sig.add_function(name, arity);
      continue;
    }
    if (head == "const") {
      std::string name;
      ls >> name;
      if (name.empty()) throw ParseError("const needs a name", 0, lineno);
      th.sig.add_constant(name);
      continue;
    }
    if (head == "equality") {
      std::string flag;
      ls >> flag;
      if (flag == "on")
        th.sig.enable_equality();
      else if (flag != "off")
        throw ParseError("equality expects 'on' or 'off'", 0, lineno);
      continue;
    }
    try {
      Formula raw = parse_formula_raw(line, th.sig);
      th.raw_formulas.push_back(raw);
      th.formulas.push_back(normalize(raw));
      th.lines.push_back(lineno);
    } catch (ParseError& e) {
      throw ParseError(std::string(e.what()), e.position, lineno);
    }
  }
  return th;
}

Theory parse_theory_text(const std::string& text) {
  std::istringstream in(text);
  return parse_theory(in);
}

Theory load_theory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open theory file: " + path);
  return parse_theory(in);
}

}  // namespace fuzzyhorn
