#include "glkit/modal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace glkit {

Formula Formula::make(ModalKind kind, std::string name, const Formula* lhs, const Formula* rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->size = 1;
  if (lhs != nullptr) {
    node->children.push_back(*lhs);
    node->size += lhs->size();
  }
  if (rhs != nullptr) {
    node->children.push_back(*rhs);
    node->size += rhs->size();
  }
  return Formula(std::move(node));
}

Formula Formula::top() {
  static const Formula kTop = make(ModalKind::Top, {}, nullptr, nullptr);
  return kTop;
}

Formula Formula::bot() {
  static const Formula kBot = make(ModalKind::Bot, {}, nullptr, nullptr);
  return kBot;
}

namespace {

bool valid_identifier(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

Formula Formula::var(std::string name) {
  if (!valid_identifier(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
  return make(ModalKind::Var, std::move(name), nullptr, nullptr);
}

Formula Formula::negation(Formula sub) { return make(ModalKind::Not, {}, &sub, nullptr); }
Formula Formula::conj(Formula lhs, Formula rhs) { return make(ModalKind::And, {}, &lhs, &rhs); }
Formula Formula::disj(Formula lhs, Formula rhs) { return make(ModalKind::Or, {}, &lhs, &rhs); }
Formula Formula::imp(Formula lhs, Formula rhs) { return make(ModalKind::Imp, {}, &lhs, &rhs); }
Formula Formula::box(Formula sub) { return make(ModalKind::Box, {}, &sub, nullptr); }
Formula Formula::dia(Formula sub) { return make(ModalKind::Dia, {}, &sub, nullptr); }

const Formula& Formula::lhs() const {
  if (node_->children.empty()) throw std::logic_error("formula has no operands");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (node_->children.size() < 2) throw std::logic_error("formula is not binary");
  return node_->children[1];
}

bool Formula::is_atomic() const { return node_->children.empty(); }
bool Formula::is_unary() const { return node_->children.size() == 1; }
bool Formula::is_binary() const { return node_->children.size() == 2; }

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (int c = compare(ca[i], cb[i]); c != 0) return c;
  }
  return 0;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.size() != b.size()) return false;
  return compare(a, b) == 0;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength; larger binds tighter.
constexpr int kImpLevel = 1;
constexpr int kOrLevel = 2;
constexpr int kAndLevel = 3;
constexpr int kUnaryLevel = 4;
constexpr int kAtomLevel = 5;

int level(ModalKind kind) {
  switch (kind) {
    case ModalKind::Imp: return kImpLevel;
    case ModalKind::Or: return kOrLevel;
    case ModalKind::And: return kAndLevel;
    case ModalKind::Not:
    case ModalKind::Box:
    case ModalKind::Dia: return kUnaryLevel;
    default: return kAtomLevel;
  }
}

struct Symbols {
  const char* top;
  const char* bot;
  const char* neg;
  const char* box;
  const char* dia;
  const char* conj;
  const char* disj;
  const char* imp;
};

constexpr Symbols kAscii{"T", "F", "~", "[]", "<>", " & ", " | ", " -> "};
constexpr Symbols kUnicode{"⊤", "⊥", "¬", "□", "◇", " ∧ ", " ∨ ", " → "};
constexpr Symbols kLatex{"\\top", "\\bot", "\\lnot ", "\\Box ", "\\Diamond ", " \\land ", " \\lor ",
                         " \\to "};

void print_rec(const Formula& f, const Symbols& sym, int min_level, std::string& out) {
  const int own = level(f.kind());
  const bool parens = own < min_level;
  if (parens) out += '(';
  switch (f.kind()) {
    case ModalKind::Top: out += sym.top; break;
    case ModalKind::Bot: out += sym.bot; break;
    case ModalKind::Var: out += f.name(); break;
    case ModalKind::Not:
      out += sym.neg;
      print_rec(f.lhs(), sym, kUnaryLevel, out);
      break;
    case ModalKind::Box:
      out += sym.box;
      print_rec(f.lhs(), sym, kUnaryLevel, out);
      break;
    case ModalKind::Dia:
      out += sym.dia;
      print_rec(f.lhs(), sym, kUnaryLevel, out);
      break;
    case ModalKind::And:
      print_rec(f.lhs(), sym, kAndLevel, out);
      out += sym.conj;
      print_rec(f.rhs(), sym, kUnaryLevel, out);
      break;
    case ModalKind::Or:
      print_rec(f.lhs(), sym, kOrLevel, out);
      out += sym.disj;
      print_rec(f.rhs(), sym, kAndLevel, out);
      break;
    case ModalKind::Imp:
      print_rec(f.lhs(), sym, kOrLevel, out);
      out += sym.imp;
      print_rec(f.rhs(), sym, kImpLevel, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_modal(const Formula& f, ModalFormat format) {
  const Symbols& sym = format == ModalFormat::Ascii     ? kAscii
                       : format == ModalFormat::Unicode ? kUnicode
                                                        : kLatex;
  std::string out;
  print_rec(f, sym, kImpLevel, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { End, Top, Bot, Ident, Not, Box, Dia, And, Or, Imp, LParen, RParen };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

class ModalLexer {
 public:
  explicit ModalLexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, pos_, {}});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  bool eat(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  Token next() {
    const std::size_t start = pos_;
    static const std::array<std::pair<std::string_view, Tok>, 18> kFixed{{
        {"[]", Tok::Box},  {"<>", Tok::Dia}, {"->", Tok::Imp}, {"~", Tok::Not},
        {"&", Tok::And},   {"|", Tok::Or},   {"(", Tok::LParen}, {")", Tok::RParen},
        {"T", Tok::Top},   {"F", Tok::Bot},  {"⊤", Tok::Top}, {"⊥", Tok::Bot},
        {"¬", Tok::Not},   {"□", Tok::Box},  {"◇", Tok::Dia}, {"∧", Tok::And},
        {"∨", Tok::Or},    {"→", Tok::Imp},
    }};
    for (const auto& [lit, kind] : kFixed) {
      if (eat(lit)) return {kind, start, std::string(lit)};
    }
    const char c = text_[pos_];
    if (c >= 'a' && c <= 'z') {
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if ((d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_') {
          ++pos_;
        } else {
          break;
        }
      }
      return {Tok::Ident, start, std::string(text_.substr(start, pos_ - start))};
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class ModalParser {
 public:
  explicit ModalParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula run() {
    if (peek().kind == Tok::End) throw ParseError("empty formula", peek().pos);
    Formula f = implication();
    if (peek().kind != Tok::End) throw ParseError("unexpected trailing input", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Imp) {
      take();
      return Formula::imp(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::And) {
      take();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: take(); return Formula::negation(unary());
      case Tok::Box: take(); return Formula::box(unary());
      case Tok::Dia: take(); return Formula::dia(unary());
      default: return atom();
    }
  }

  Formula atom() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Top: return Formula::top();
      case Tok::Bot: return Formula::bot();
      case Tok::Ident: return Formula::var(t.text);
      case Tok::LParen: {
        Formula f = implication();
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        take();
        return f;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse_modal(std::string_view text) {
  return ModalParser(ModalLexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// Structural queries

namespace {

void collect(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (f.is_unary() || f.is_binary()) collect(f.lhs(), out);
  if (f.is_binary()) collect(f.rhs(), out);
}

void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == ModalKind::Var) {
    out.insert(f.name());
    return;
  }
  if (f.is_unary() || f.is_binary()) collect_vars(f.lhs(), out);
  if (f.is_binary()) collect_vars(f.rhs(), out);
}

}  // namespace

std::vector<Formula> subformulas(const Formula& f) {
  std::set<Formula> seen;
  collect(f, seen);
  return {seen.begin(), seen.end()};
}

std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> seen;
  collect_vars(f, seen);
  return {seen.begin(), seen.end()};
}

Formula normalize_dia(const Formula& f) {
  switch (f.kind()) {
    case ModalKind::Top:
    case ModalKind::Bot:
    case ModalKind::Var: return f;
    case ModalKind::Not: return Formula::negation(normalize_dia(f.lhs()));
    case ModalKind::Box: return Formula::box(normalize_dia(f.lhs()));
    case ModalKind::Dia:
      return Formula::negation(Formula::box(Formula::negation(normalize_dia(f.lhs()))));
    case ModalKind::And: return Formula::conj(normalize_dia(f.lhs()), normalize_dia(f.rhs()));
    case ModalKind::Or: return Formula::disj(normalize_dia(f.lhs()), normalize_dia(f.rhs()));
    case ModalKind::Imp: return Formula::imp(normalize_dia(f.lhs()), normalize_dia(f.rhs()));
  }
  return f;
}

std::size_t connective_count(const Formula& f) {
  std::size_t n = f.kind() == ModalKind::Var ? 0 : 1;
  if (f.is_unary() || f.is_binary()) n += connective_count(f.lhs());
  if (f.is_binary()) n += connective_count(f.rhs());
  return n;
}

namespace {

// Emits every formula with exactly `c` connectives built from `levels[0..c-1]`.
void emit_level(std::size_t c, const std::vector<std::vector<Formula>>& levels,
                const std::function<void(const Formula&)>& out) {
  if (c == 1) {
    out(Formula::top());
    out(Formula::bot());
  }
  for (const Formula& a : levels[c - 1]) out(Formula::negation(a));
  for (const Formula& a : levels[c - 1]) out(Formula::box(a));
  for (const Formula& a : levels[c - 1]) out(Formula::dia(a));
  for (ModalKind k : {ModalKind::And, ModalKind::Or, ModalKind::Imp}) {
    for (std::size_t i = 0; i < c; ++i) {
      for (const Formula& a : levels[i]) {
        for (const Formula& b : levels[c - 1 - i]) {
          switch (k) {
            case ModalKind::And: out(Formula::conj(a, b)); break;
            case ModalKind::Or: out(Formula::disj(a, b)); break;
            default: out(Formula::imp(a, b)); break;
          }
        }
      }
    }
  }
}

}  // namespace

void for_each_formula(std::size_t max_connectives, const std::vector<std::string>& vars,
                      const std::function<void(const Formula&)>& visit) {
  std::vector<std::vector<Formula>> levels(1);
  for (const auto& v : vars) levels[0].push_back(Formula::var(v));
  for (const Formula& f : levels[0]) visit(f);
  for (std::size_t c = 1; c <= max_connectives; ++c) {
    if (c == max_connectives) {
      emit_level(c, levels, visit);
      break;
    }
    std::vector<Formula> next;
    emit_level(c, levels, [&](const Formula& f) { next.push_back(f); });
    for (const Formula& f : next) visit(f);
    levels.push_back(std::move(next));
  }
}

std::uint64_t count_formulas(std::size_t max_connectives, std::size_t var_count) {
  std::vector<std::uint64_t> g{var_count};
  std::uint64_t total = var_count;
  for (std::size_t c = 1; c <= max_connectives; ++c) {
    std::uint64_t n = (c == 1 ? 2 : 0) + 3 * g[c - 1];
    for (std::size_t i = 0; i < c; ++i) n += 3 * g[i] * g[c - 1 - i];
    g.push_back(n);
    total += n;
  }
  return total;
}

}  // namespace glkit
