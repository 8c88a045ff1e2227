#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "glkit/modal.hpp"

namespace glkit {

using BigInt = boost::multiprecision::cpp_int;

class ArithError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an intermediate value would need more bits than allowed.
class BudgetExceeded : public ArithError {
 public:
  using ArithError::ArithError;
};

/// Default exact-arithmetic budget in bits, overridable through GLKIT_BIT_BUDGET.
std::size_t bit_budget();

/// The theory PA + <>^k T; k = 0 is PA.
struct TheoryId {
  std::size_t k = 0;
  friend bool operator==(TheoryId, TheoryId) = default;
};

enum class TermKind { Zero, One, Var, Add, Mul, Exp, Log, ExpStar, LogStar, Quote };

enum class ArithKind {
  Eq,
  Less,
  Leq,
  CongMod,
  Prf,
  Not,
  And,
  Or,
  Imp,
  ForAll,
  Exists,
  BoundedForAll,
  BoundedExists,
};

enum class ArithFormat { Ascii, Latex, Json };

class ArithFormula;

/// Terms of the extended signature.  `Quote` stands for the numeral of the
/// Gödel number of a formula (see quote()); expand_quotes() replaces it by
/// that numeral.
class ArithTerm {
 public:
  static ArithTerm zero();
  static ArithTerm one();
  static ArithTerm var(std::string name);
  static ArithTerm add(ArithTerm a, ArithTerm b);
  static ArithTerm mul(ArithTerm a, ArithTerm b);
  static ArithTerm exp(ArithTerm a);
  static ArithTerm log(ArithTerm a);
  static ArithTerm exp_star(ArithTerm a);
  static ArithTerm log_star(ArithTerm a);
  static ArithTerm quote(ArithFormula f);

  TermKind kind() const;
  const std::string& name() const;
  const ArithTerm& lhs() const;
  const ArithTerm& rhs() const;
  const ArithFormula& quoted() const;

  /// Node count; a quotation counts as one node.
  std::size_t size() const;

  friend bool operator==(const ArithTerm& a, const ArithTerm& b);

 private:
  struct Node;
  explicit ArithTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static ArithTerm make(TermKind kind, std::string name, std::vector<ArithTerm> args,
                        std::vector<ArithFormula> quoted);
  std::shared_ptr<const Node> node_;
};

class ArithFormula {
 public:
  static ArithFormula eq(ArithTerm a, ArithTerm b);
  static ArithFormula less(ArithTerm a, ArithTerm b);
  static ArithFormula leq(ArithTerm a, ArithTerm b);
  /// t ≡ residue (mod modulus); requires modulus ≥ 1 and residue < modulus.
  static ArithFormula cong_mod(ArithTerm t, std::uint64_t residue, std::uint64_t modulus);
  static ArithFormula prf(TheoryId theory, ArithTerm proof, ArithTerm target);
  static ArithFormula negation(ArithFormula f);
  static ArithFormula conj(ArithFormula a, ArithFormula b);
  static ArithFormula disj(ArithFormula a, ArithFormula b);
  static ArithFormula imp(ArithFormula a, ArithFormula b);
  static ArithFormula forall(std::string var, ArithFormula body);
  static ArithFormula exists(std::string var, ArithFormula body);
  static ArithFormula bounded_forall(std::string var, ArithTerm bound, ArithFormula body);
  static ArithFormula bounded_exists(std::string var, ArithTerm bound, ArithFormula body);

  ArithKind kind() const;

  /// Left and right terms of Eq, Less, Leq; proof and target of Prf.
  const ArithTerm& left() const;
  const ArithTerm& right() const;
  /// Term of CongMod, bound of bounded quantifiers.
  const ArithTerm& term() const;
  std::uint64_t residue() const;
  std::uint64_t modulus() const;
  TheoryId theory() const;

  /// Operand of Not, operands of binary connectives, body of quantifiers.
  const ArithFormula& lhs() const;
  const ArithFormula& rhs() const;
  const ArithFormula& body() const;
  const std::string& var() const;

  bool is_quantifier() const;
  bool is_bounded() const;

  std::size_t size() const;

  friend bool operator==(const ArithFormula& a, const ArithFormula& b);

 private:
  struct Node;
  explicit ArithFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static ArithFormula make(Node node);
  std::shared_ptr<const Node> node_;
};

/// 0, 1, and for larger n: 2n ↦ (1+1)·n, 2n+1 ↦ (1+1)·n+1.
ArithTerm numeral(const BigInt& n);

/// Value of a closed term.  Log is floor-log2 with log(0)=0; exp*(0)=0 and
/// log*(x) = max({y | exp*(y) ≤ x} ∪ {0}).
BigInt eval_closed_term(const ArithTerm& t, std::size_t budget_bits = bit_budget());

/// `bits` is a string over {'0','1'}; the result is 1 followed by those bits.
BigInt godel_encode(std::string_view bits);
std::string godel_decode(const BigInt& n);
/// Bytes of `text` as a bit string, 8 bits per byte, most significant first.
std::string bits_of(std::string_view text);
std::size_t floor_log2(const BigInt& n);

/// Gödel number of the canonical ascii printing of `f`.
BigInt godel_number(const ArithFormula& f);
ArithTerm quote(const ArithFormula& f);
/// Replaces each quotation by its numeral (only the outermost level: a
/// quotation's own text is not rewritten).
ArithTerm expand_quotes(const ArithTerm& t);
ArithFormula expand_quotes(const ArithFormula& f);

ArithFormula truth();    // 0=0
ArithFormula falsity();  // 0=1

/// exists x.(Prf(x, #(box_n(n-1, f)))) iterated n times.
ArithFormula box_n(std::size_t n, const ArithFormula& f);
/// ~exists x.(Prf(x, #(~diamond_n(n-1, f)))) iterated n times.
ArithFormula diamond_n(std::size_t n, const ArithFormula& f);

std::string print_arith(const ArithFormula& f, ArithFormat format = ArithFormat::Ascii);
std::string print_term(const ArithTerm& t, ArithFormat format = ArithFormat::Ascii);
nlohmann::json arith_to_json(const ArithFormula& f);
nlohmann::json term_to_json(const ArithTerm& t);

ArithFormula parse_arith(std::string_view text);
/// Decimal literals are accepted and read as numerals.
ArithTerm parse_term(std::string_view text);

std::set<std::string> free_variables(const ArithFormula& f);
bool is_sentence(const ArithFormula& f);
/// No quantifier rebinds a variable already bound on the path from the root.
/// Quoted formulas are checked as separate scopes.
bool no_shadowing(const ArithFormula& f);

}  // namespace glkit
