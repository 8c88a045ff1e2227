#include <cctype>
#include <optional>

#include "glkit/arith.hpp"

namespace glkit {

namespace {

struct Token {
  enum Kind { Ident, Number, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  static const char* const kSymbols[] = {"===", "<=", "->", "(", ")", "[", "]", ",", ".", "+",
                                         "*",   "=",  "<",  "~", "&", "|", "#", "^"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Number, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char* sym : kSymbols) {
      const std::string_view v(sym);
      if (s.substr(i, v.size()) == v) {
        out.push_back({Token::Sym, std::string(v), i});
        i += v.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "exp" || s == "log" || s == "expstar" || s == "logstar" || s == "forall" ||
         s == "exists" || s == "mod" || s == "Prf";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {
    if (toks_.size() == 1) throw ParseError("empty formula", 0);
  }

  ArithFormula whole_formula() {
    ArithFormula f = formula();
    expect_end();
    return f;
  }

  ArithTerm whole_term() {
    ArithTerm t = term();
    expect_end();
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool at_sym(const char* s) const { return peek().kind == Token::Sym && peek().text == s; }
  bool at_ident(const char* s) const { return peek().kind == Token::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + (t.kind == Token::End ? ", found end of input" : ", found '" + t.text + "'"),
                     t.pos);
  }

  void expect_sym(const char* s) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "'");
    ++i_;
  }

  void expect_ident(const char* s) {
    if (!at_ident(s)) fail(std::string("expected '") + s + "'");
    ++i_;
  }

  void expect_end() {
    if (peek().kind != Token::End) fail("unexpected trailing input");
  }

  std::string variable() {
    if (peek().kind != Token::Ident || is_keyword(peek().text)) fail("expected a variable");
    const Token& t = toks_[i_++];
    try {
      ArithTerm::var(t.text);
    } catch (const ArithError&) {
      throw ParseError("invalid variable name '" + t.text + "'", t.pos);
    }
    return t.text;
  }

  std::uint64_t number() {
    if (peek().kind != Token::Number) fail("expected a number");
    const Token& t = toks_[i_++];
    if (t.text.size() > 18) throw ParseError("number too large", t.pos);
    return std::stoull(t.text);
  }

  // formula := disj ['->' formula]
  ArithFormula formula() {
    ArithFormula lhs = disjunction();
    if (at_sym("->")) {
      ++i_;
      return ArithFormula::imp(lhs, formula());
    }
    return lhs;
  }

  ArithFormula disjunction() {
    ArithFormula f = conjunction();
    while (at_sym("|")) {
      ++i_;
      f = ArithFormula::disj(f, conjunction());
    }
    return f;
  }

  ArithFormula conjunction() {
    ArithFormula f = unary();
    while (at_sym("&")) {
      ++i_;
      f = ArithFormula::conj(f, unary());
    }
    return f;
  }

  ArithFormula unary() {
    if (at_sym("~")) {
      ++i_;
      return ArithFormula::negation(unary());
    }
    return primary();
  }

  ArithFormula primary() {
    if (at_ident("exists") || at_ident("forall")) return quantifier();
    if (at_ident("Prf")) return proof_atom();
    const std::size_t start = i_;
    try {
      return relation();
    } catch (const ParseError& as_relation) {
      if (toks_[start].kind != Token::Sym || toks_[start].text != "(") throw;
      const std::size_t relation_failed_at = i_;
      i_ = start + 1;
      try {
        ArithFormula f = formula();
        expect_sym(")");
        return f;
      } catch (const ParseError& as_group) {
        if (as_group.position() >= as_relation.position()) throw;
        i_ = relation_failed_at;
        throw as_relation;
      }
    }
  }

  ArithFormula quantifier() {
    const bool all = peek().text == "forall";
    ++i_;
    std::string v = variable();
    std::optional<ArithTerm> bound;
    if (at_sym("<")) {
      ++i_;
      bound = term();
    }
    expect_sym(".");
    expect_sym("(");
    ArithFormula body = formula();
    expect_sym(")");
    if (bound) {
      return all ? ArithFormula::bounded_forall(v, *bound, body) : ArithFormula::bounded_exists(v, *bound, body);
    }
    return all ? ArithFormula::forall(v, body) : ArithFormula::exists(v, body);
  }

  ArithFormula proof_atom() {
    ++i_;
    TheoryId theory;
    if (at_sym("[")) {
      ++i_;
      expect_ident("PA");
      expect_sym("+");
      expect_ident("Dia");
      expect_sym("^");
      theory.k = number();
      expect_sym("(");
      expect_ident("T");
      expect_sym(")");
      expect_sym("]");
    }
    expect_sym("(");
    ArithTerm proof = term();
    expect_sym(",");
    ArithTerm target = term();
    expect_sym(")");
    return ArithFormula::prf(theory, proof, target);
  }

  ArithFormula relation() {
    ArithTerm lhs = term();
    if (at_sym("=")) {
      ++i_;
      return ArithFormula::eq(lhs, term());
    }
    if (at_sym("<")) {
      ++i_;
      return ArithFormula::less(lhs, term());
    }
    if (at_sym("<=")) {
      ++i_;
      return ArithFormula::leq(lhs, term());
    }
    if (at_sym("===")) {
      ++i_;
      const std::size_t pos = peek().pos;
      const std::uint64_t r = number();
      expect_sym("(");
      expect_ident("mod");
      const std::uint64_t m = number();
      expect_sym(")");
      if (m == 0 || r >= m) throw ParseError("residue must be below a positive modulus", pos);
      return ArithFormula::cong_mod(lhs, r, m);
    }
    fail("expected '=', '<', '<=' or '==='");
  }

  ArithTerm term() {
    ArithTerm t = product();
    while (at_sym("+")) {
      ++i_;
      t = ArithTerm::add(t, product());
    }
    return t;
  }

  ArithTerm product() {
    ArithTerm t = term_atom();
    while (at_sym("*")) {
      ++i_;
      t = ArithTerm::mul(t, term_atom());
    }
    return t;
  }

  ArithTerm term_atom() {
    const Token& tok = peek();
    if (tok.kind == Token::Number) {
      ++i_;
      if (tok.text == "0") return ArithTerm::zero();
      if (tok.text == "1") return ArithTerm::one();
      return numeral(BigInt(tok.text));
    }
    if (at_sym("#")) {
      ++i_;
      expect_sym("(");
      ArithFormula f = formula();
      expect_sym(")");
      return ArithTerm::quote(f);
    }
    if (at_sym("(")) {
      ++i_;
      ArithTerm t = term();
      expect_sym(")");
      return t;
    }
    if (tok.kind == Token::Ident) {
      const std::string name = tok.text;
      if (name == "exp" || name == "log" || name == "expstar" || name == "logstar") {
        ++i_;
        expect_sym("(");
        ArithTerm arg = term();
        expect_sym(")");
        if (name == "exp") return ArithTerm::exp(arg);
        if (name == "log") return ArithTerm::log(arg);
        if (name == "expstar") return ArithTerm::exp_star(arg);
        return ArithTerm::log_star(arg);
      }
      return ArithTerm::var(variable());
    }
    fail("expected a term");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

ArithFormula parse_arith(std::string_view text) { return Parser(text).whole_formula(); }

ArithTerm parse_term(std::string_view text) { return Parser(text).whole_term(); }

}  // namespace glkit
