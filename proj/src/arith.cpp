#include "glkit/arith.hpp"

#include <cstdlib>

namespace glkit {

struct ArithTerm::Node {
  TermKind kind;
  std::string name;
  std::vector<ArithTerm> args;
  std::vector<ArithFormula> quoted;  // exactly one element for Quote
  std::size_t size;
};

struct ArithFormula::Node {
  ArithKind kind;
  std::vector<ArithTerm> terms{};
  std::vector<ArithFormula> subs{};
  std::string var{};
  std::uint64_t residue = 0;
  std::uint64_t modulus = 0;
  TheoryId theory{};
  std::size_t size = 1;
};

std::size_t bit_budget() {
  if (const char* env = std::getenv("GLKIT_BIT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 20;
}

namespace {

void check_identifier(const std::string& name) {
  bool ok = !name.empty() && name[0] >= 'a' && name[0] <= 'z';
  for (char c : name) ok = ok && ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_');
  if (!ok) throw ArithError("invalid variable name '" + name + "'");
}

}  // namespace

// ---- terms ---------------------------------------------------------------

ArithTerm ArithTerm::make(TermKind kind, std::string name, std::vector<ArithTerm> args,
                          std::vector<ArithFormula> quoted) {
  std::size_t size = 1;
  for (const auto& a : args) size += a.size();
  return ArithTerm(std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(args), std::move(quoted), size}));
}

ArithTerm ArithTerm::zero() {
  static const ArithTerm z = make(TermKind::Zero, {}, {}, {});
  return z;
}
ArithTerm ArithTerm::one() {
  static const ArithTerm o = make(TermKind::One, {}, {}, {});
  return o;
}
ArithTerm ArithTerm::var(std::string name) {
  check_identifier(name);
  return make(TermKind::Var, std::move(name), {}, {});
}
ArithTerm ArithTerm::add(ArithTerm a, ArithTerm b) {
  return make(TermKind::Add, {}, {std::move(a), std::move(b)}, {});
}
ArithTerm ArithTerm::mul(ArithTerm a, ArithTerm b) {
  return make(TermKind::Mul, {}, {std::move(a), std::move(b)}, {});
}
ArithTerm ArithTerm::exp(ArithTerm a) { return make(TermKind::Exp, {}, {std::move(a)}, {}); }
ArithTerm ArithTerm::log(ArithTerm a) { return make(TermKind::Log, {}, {std::move(a)}, {}); }
ArithTerm ArithTerm::exp_star(ArithTerm a) { return make(TermKind::ExpStar, {}, {std::move(a)}, {}); }
ArithTerm ArithTerm::log_star(ArithTerm a) { return make(TermKind::LogStar, {}, {std::move(a)}, {}); }
ArithTerm ArithTerm::quote(ArithFormula f) { return make(TermKind::Quote, {}, {}, {std::move(f)}); }

TermKind ArithTerm::kind() const { return node_->kind; }
const std::string& ArithTerm::name() const { return node_->name; }
std::size_t ArithTerm::size() const { return node_->size; }

const ArithTerm& ArithTerm::lhs() const {
  if (node_->args.empty()) throw std::logic_error("term has no operand");
  return node_->args[0];
}

const ArithTerm& ArithTerm::rhs() const {
  if (node_->args.size() < 2) throw std::logic_error("term has no right operand");
  return node_->args[1];
}

const ArithFormula& ArithTerm::quoted() const {
  if (node_->quoted.empty()) throw std::logic_error("term is not a quotation");
  return node_->quoted[0];
}

bool operator==(const ArithTerm& a, const ArithTerm& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.size == y.size && x.name == y.name && x.args == y.args &&
         x.quoted == y.quoted;
}

// ---- formulas ------------------------------------------------------------

ArithFormula ArithFormula::make(Node node) {
  node.size = 1;
  for (const auto& t : node.terms) node.size += t.size();
  for (const auto& f : node.subs) node.size += f.size();
  return ArithFormula(std::make_shared<const Node>(std::move(node)));
}

ArithFormula ArithFormula::eq(ArithTerm a, ArithTerm b) {
  return make(Node{ArithKind::Eq, {std::move(a), std::move(b)}});
}
ArithFormula ArithFormula::less(ArithTerm a, ArithTerm b) {
  return make(Node{ArithKind::Less, {std::move(a), std::move(b)}});
}
ArithFormula ArithFormula::leq(ArithTerm a, ArithTerm b) {
  return make(Node{ArithKind::Leq, {std::move(a), std::move(b)}});
}

ArithFormula ArithFormula::cong_mod(ArithTerm t, std::uint64_t residue, std::uint64_t modulus) {
  if (modulus == 0) throw ArithError("modulus must be at least 1");
  if (residue >= modulus) throw ArithError("residue must be below the modulus");
  Node n{ArithKind::CongMod, {std::move(t)}};
  n.residue = residue;
  n.modulus = modulus;
  return make(std::move(n));
}

ArithFormula ArithFormula::prf(TheoryId theory, ArithTerm proof, ArithTerm target) {
  Node n{ArithKind::Prf, {std::move(proof), std::move(target)}};
  n.theory = theory;
  return make(std::move(n));
}

ArithFormula ArithFormula::negation(ArithFormula f) { return make(Node{ArithKind::Not, {}, {std::move(f)}}); }
ArithFormula ArithFormula::conj(ArithFormula a, ArithFormula b) {
  return make(Node{ArithKind::And, {}, {std::move(a), std::move(b)}});
}
ArithFormula ArithFormula::disj(ArithFormula a, ArithFormula b) {
  return make(Node{ArithKind::Or, {}, {std::move(a), std::move(b)}});
}
ArithFormula ArithFormula::imp(ArithFormula a, ArithFormula b) {
  return make(Node{ArithKind::Imp, {}, {std::move(a), std::move(b)}});
}

ArithFormula ArithFormula::forall(std::string var, ArithFormula body) {
  check_identifier(var);
  return make(Node{ArithKind::ForAll, {}, {std::move(body)}, std::move(var)});
}
ArithFormula ArithFormula::exists(std::string var, ArithFormula body) {
  check_identifier(var);
  return make(Node{ArithKind::Exists, {}, {std::move(body)}, std::move(var)});
}
ArithFormula ArithFormula::bounded_forall(std::string var, ArithTerm bound, ArithFormula body) {
  check_identifier(var);
  return make(Node{ArithKind::BoundedForAll, {std::move(bound)}, {std::move(body)}, std::move(var)});
}
ArithFormula ArithFormula::bounded_exists(std::string var, ArithTerm bound, ArithFormula body) {
  check_identifier(var);
  return make(Node{ArithKind::BoundedExists, {std::move(bound)}, {std::move(body)}, std::move(var)});
}

ArithKind ArithFormula::kind() const { return node_->kind; }
std::uint64_t ArithFormula::residue() const { return node_->residue; }
std::uint64_t ArithFormula::modulus() const { return node_->modulus; }
TheoryId ArithFormula::theory() const { return node_->theory; }
const std::string& ArithFormula::var() const { return node_->var; }
std::size_t ArithFormula::size() const { return node_->size; }

const ArithTerm& ArithFormula::left() const {
  if (node_->terms.size() != 2) throw std::logic_error("formula has no term pair");
  return node_->terms[0];
}
const ArithTerm& ArithFormula::right() const {
  if (node_->terms.size() != 2) throw std::logic_error("formula has no term pair");
  return node_->terms[1];
}
const ArithTerm& ArithFormula::term() const {
  if (node_->terms.size() != 1) throw std::logic_error("formula has no single term");
  return node_->terms[0];
}
const ArithFormula& ArithFormula::lhs() const {
  if (node_->subs.empty()) throw std::logic_error("formula has no subformula");
  return node_->subs[0];
}
const ArithFormula& ArithFormula::rhs() const {
  if (node_->subs.size() < 2) throw std::logic_error("formula has no right subformula");
  return node_->subs[1];
}
const ArithFormula& ArithFormula::body() const { return lhs(); }

bool ArithFormula::is_quantifier() const {
  switch (kind()) {
    case ArithKind::ForAll:
    case ArithKind::Exists:
    case ArithKind::BoundedForAll:
    case ArithKind::BoundedExists:
      return true;
    default:
      return false;
  }
}

bool ArithFormula::is_bounded() const {
  return kind() == ArithKind::BoundedForAll || kind() == ArithKind::BoundedExists;
}

bool operator==(const ArithFormula& a, const ArithFormula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.size == y.size && x.residue == y.residue && x.modulus == y.modulus &&
         x.theory == y.theory && x.var == y.var && x.terms == y.terms && x.subs == y.subs;
}

// ---- numerals and evaluation -------------------------------------------------

ArithTerm numeral(const BigInt& n) {
  if (n < 0) throw ArithError("numerals denote natural numbers");
  if (n == 0) return ArithTerm::zero();
  const ArithTerm one = ArithTerm::one();
  const ArithTerm two = ArithTerm::add(one, one);
  const std::size_t top = floor_log2(n);
  ArithTerm t = one;
  for (std::size_t i = top; i-- > 0;) {
    t = ArithTerm::mul(two, t);
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(i))) t = ArithTerm::add(t, one);
  }
  return t;
}

std::size_t floor_log2(const BigInt& n) {
  if (n <= 0) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(n));
}

namespace {

void check_budget(const BigInt& v, std::size_t budget) {
  if (v > 0 && floor_log2(v) + 1 > budget) {
    throw BudgetExceeded("value exceeds the bit budget of " + std::to_string(budget));
  }
}

BigInt power_of_two(const BigInt& e, std::size_t budget) {
  if (e >= budget) throw BudgetExceeded("exponent exceeds the bit budget of " + std::to_string(budget));
  BigInt r = 0;
  boost::multiprecision::bit_set(r, static_cast<unsigned>(e));
  return r;
}

BigInt eval(const ArithTerm& t, std::size_t budget) {
  switch (t.kind()) {
    case TermKind::Zero: return 0;
    case TermKind::One: return 1;
    case TermKind::Var: throw ArithError("free variable '" + t.name() + "' in closed term");
    case TermKind::Add: {
      BigInt r = eval(t.lhs(), budget) + eval(t.rhs(), budget);
      check_budget(r, budget);
      return r;
    }
    case TermKind::Mul: {
      const BigInt a = eval(t.lhs(), budget);
      const BigInt b = eval(t.rhs(), budget);
      if (a != 0 && b != 0 && floor_log2(a) + floor_log2(b) + 1 > budget) {
        throw BudgetExceeded("product exceeds the bit budget of " + std::to_string(budget));
      }
      BigInt r = a * b;
      check_budget(r, budget);
      return r;
    }
    case TermKind::Exp: return power_of_two(eval(t.lhs(), budget), budget);
    case TermKind::Log: return floor_log2(eval(t.lhs(), budget));
    case TermKind::ExpStar: {
      const BigInt m = eval(t.lhs(), budget);
      BigInt v = 0;
      for (BigInt i = 0; i < m; ++i) v = power_of_two(v, budget);
      return v;
    }
    case TermKind::LogStar: {
      const BigInt x = eval(t.lhs(), budget);
      // exp*(y+1) = 2^exp*(y) ≤ x  iff  x ≥ 1 and exp*(y) ≤ floor_log2(x).
      std::size_t y = 0;
      BigInt e = 0;
      while (x >= 1 && e <= floor_log2(x)) {
        ++y;
        e = power_of_two(e, budget);
      }
      return y;
    }
    case TermKind::Quote: {
      BigInt g = godel_number(t.quoted());
      check_budget(g, budget);
      return g;
    }
  }
  throw std::logic_error("unknown term kind");
}

}  // namespace

BigInt eval_closed_term(const ArithTerm& t, std::size_t budget_bits) { return eval(t, budget_bits); }

// ---- Gödel numbering ---------------------------------------------------------

BigInt godel_encode(std::string_view bits) {
  BigInt r = 1;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ArithError("bit strings may only contain 0 and 1");
    r <<= 1;
    if (c == '1') r |= 1;
  }
  return r;
}

std::string godel_decode(const BigInt& n) {
  if (n <= 0) throw ArithError("only positive integers encode bit strings");
  const std::size_t len = floor_log2(n);
  std::string out(len, '0');
  for (std::size_t i = 0; i < len; ++i) {
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(len - 1 - i))) out[i] = '1';
  }
  return out;
}

std::string bits_of(std::string_view text) {
  std::string out;
  out.reserve(text.size() * 8);
  for (unsigned char c : text) {
    for (int b = 7; b >= 0; --b) out.push_back(((c >> b) & 1U) ? '1' : '0');
  }
  return out;
}

BigInt godel_number(const ArithFormula& f) { return godel_encode(bits_of(print_arith(f))); }

ArithTerm quote(const ArithFormula& f) { return ArithTerm::quote(f); }

ArithTerm expand_quotes(const ArithTerm& t) {
  switch (t.kind()) {
    case TermKind::Zero:
    case TermKind::One:
    case TermKind::Var:
      return t;
    case TermKind::Add: return ArithTerm::add(expand_quotes(t.lhs()), expand_quotes(t.rhs()));
    case TermKind::Mul: return ArithTerm::mul(expand_quotes(t.lhs()), expand_quotes(t.rhs()));
    case TermKind::Exp: return ArithTerm::exp(expand_quotes(t.lhs()));
    case TermKind::Log: return ArithTerm::log(expand_quotes(t.lhs()));
    case TermKind::ExpStar: return ArithTerm::exp_star(expand_quotes(t.lhs()));
    case TermKind::LogStar: return ArithTerm::log_star(expand_quotes(t.lhs()));
    case TermKind::Quote: return numeral(godel_number(t.quoted()));
  }
  throw std::logic_error("unknown term kind");
}

ArithFormula expand_quotes(const ArithFormula& f) {
  switch (f.kind()) {
    case ArithKind::Eq: return ArithFormula::eq(expand_quotes(f.left()), expand_quotes(f.right()));
    case ArithKind::Less: return ArithFormula::less(expand_quotes(f.left()), expand_quotes(f.right()));
    case ArithKind::Leq: return ArithFormula::leq(expand_quotes(f.left()), expand_quotes(f.right()));
    case ArithKind::CongMod:
      return ArithFormula::cong_mod(expand_quotes(f.term()), f.residue(), f.modulus());
    case ArithKind::Prf:
      return ArithFormula::prf(f.theory(), expand_quotes(f.left()), expand_quotes(f.right()));
    case ArithKind::Not: return ArithFormula::negation(expand_quotes(f.lhs()));
    case ArithKind::And: return ArithFormula::conj(expand_quotes(f.lhs()), expand_quotes(f.rhs()));
    case ArithKind::Or: return ArithFormula::disj(expand_quotes(f.lhs()), expand_quotes(f.rhs()));
    case ArithKind::Imp: return ArithFormula::imp(expand_quotes(f.lhs()), expand_quotes(f.rhs()));
    case ArithKind::ForAll: return ArithFormula::forall(f.var(), expand_quotes(f.body()));
    case ArithKind::Exists: return ArithFormula::exists(f.var(), expand_quotes(f.body()));
    case ArithKind::BoundedForAll:
      return ArithFormula::bounded_forall(f.var(), expand_quotes(f.term()), expand_quotes(f.body()));
    case ArithKind::BoundedExists:
      return ArithFormula::bounded_exists(f.var(), expand_quotes(f.term()), expand_quotes(f.body()));
  }
  throw std::logic_error("unknown formula kind");
}

ArithFormula truth() { return ArithFormula::eq(ArithTerm::zero(), ArithTerm::zero()); }
ArithFormula falsity() { return ArithFormula::eq(ArithTerm::zero(), ArithTerm::one()); }

namespace {

ArithFormula provable(const ArithFormula& f) {
  return ArithFormula::exists("x", ArithFormula::prf(TheoryId{0}, ArithTerm::var("x"), quote(f)));
}

}  // namespace

ArithFormula box_n(std::size_t n, const ArithFormula& f) {
  ArithFormula r = f;
  for (std::size_t i = 0; i < n; ++i) r = provable(r);
  return r;
}

ArithFormula diamond_n(std::size_t n, const ArithFormula& f) {
  ArithFormula r = f;
  for (std::size_t i = 0; i < n; ++i) r = ArithFormula::negation(provable(ArithFormula::negation(r)));
  return r;
}

// ---- variables -------------------------------------------------------------

namespace {

void collect_free(const ArithTerm& t, const std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
      return;
    case TermKind::Add:
    case TermKind::Mul:
      collect_free(t.lhs(), bound, out);
      collect_free(t.rhs(), bound, out);
      return;
    case TermKind::Exp:
    case TermKind::Log:
    case TermKind::ExpStar:
    case TermKind::LogStar:
      collect_free(t.lhs(), bound, out);
      return;
    default:
      return;  // quotations are closed
  }
}

void collect_free(const ArithFormula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case ArithKind::Eq:
    case ArithKind::Less:
    case ArithKind::Leq:
    case ArithKind::Prf:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case ArithKind::CongMod:
      collect_free(f.term(), bound, out);
      return;
    case ArithKind::Not:
      collect_free(f.lhs(), bound, out);
      return;
    case ArithKind::And:
    case ArithKind::Or:
    case ArithKind::Imp:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
    default:
      if (f.is_bounded()) collect_free(f.term(), bound, out);
      bound.push_back(f.var());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

bool quotes_unshadowed(const ArithTerm& t);

bool unshadowed(const ArithFormula& f, std::vector<std::string>& bound) {
  auto terms_ok = [&]() {
    switch (f.kind()) {
      case ArithKind::Eq:
      case ArithKind::Less:
      case ArithKind::Leq:
      case ArithKind::Prf:
        return quotes_unshadowed(f.left()) && quotes_unshadowed(f.right());
      case ArithKind::CongMod:
      case ArithKind::BoundedForAll:
      case ArithKind::BoundedExists:
        return quotes_unshadowed(f.term());
      default:
        return true;
    }
  };
  if (!terms_ok()) return false;
  switch (f.kind()) {
    case ArithKind::Not: return unshadowed(f.lhs(), bound);
    case ArithKind::And:
    case ArithKind::Or:
    case ArithKind::Imp:
      return unshadowed(f.lhs(), bound) && unshadowed(f.rhs(), bound);
    default:
      break;
  }
  if (!f.is_quantifier()) return true;
  if (std::find(bound.begin(), bound.end(), f.var()) != bound.end()) return false;
  bound.push_back(f.var());
  const bool ok = unshadowed(f.body(), bound);
  bound.pop_back();
  return ok;
}

bool quotes_unshadowed(const ArithTerm& t) {
  switch (t.kind()) {
    case TermKind::Add:
    case TermKind::Mul:
      return quotes_unshadowed(t.lhs()) && quotes_unshadowed(t.rhs());
    case TermKind::Exp:
    case TermKind::Log:
    case TermKind::ExpStar:
    case TermKind::LogStar:
      return quotes_unshadowed(t.lhs());
    case TermKind::Quote:
      return no_shadowing(t.quoted());
    default:
      return true;
  }
}

}  // namespace

std::set<std::string> free_variables(const ArithFormula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

bool is_sentence(const ArithFormula& f) { return free_variables(f).empty(); }

bool no_shadowing(const ArithFormula& f) {
  std::vector<std::string> bound;
  return unshadowed(f, bound);
}

}  // namespace glkit
