#pragma once

#include <compare>
#include <optional>
#include <cstdint>
#include <string>
#include <string_view>

#include "glkit/arith.hpp"

namespace glkit {

/// exp^height(base) + offset, kept canonical: a positive height implies
/// base ≥ 2^16, and at height 0 the offset is folded into the base.
class TowerNum {
 public:
  static constexpr std::int64_t kMaxOffset = 1024;

  TowerNum() = default;
  /// Canonicalizes; throws ArithError if the value would be negative or the
  /// offset does not fit.
  TowerNum(std::size_t height, BigInt base, std::int64_t offset = 0);

  std::size_t height() const { return height_; }
  const BigInt& base() const { return base_; }
  std::int64_t offset() const { return offset_; }

  friend bool operator==(const TowerNum&, const TowerNum&) = default;

 private:
  std::size_t height_ = 0;
  BigInt base_ = 0;
  std::int64_t offset_ = 0;
};

enum class Order { Less, Equal, Greater };

std::string order_name(Order o);

TowerNum make_int(const BigInt& n);
/// 2^t.  Throws ArithError for a tall argument with a nonzero offset.
TowerNum tower_exp(const TowerNum& t);
TowerNum tower_exp_star(std::size_t m);
/// t + delta with the result's offset bounded by TowerNum::kMaxOffset.
TowerNum tower_add_small(const TowerNum& t, std::int64_t delta);

Order tower_compare(const TowerNum& s, const TowerNum& t);
/// Floor of log2, with log(0) = 0.
TowerNum tower_log(const TowerNum& t);
std::size_t tower_log_star(const TowerNum& t);
std::size_t tower_residue(const TowerNum& t, std::size_t m);

/// Exact value when it has at most `budget_bits` bits.
std::optional<BigInt> tower_value(const TowerNum& t, std::size_t budget_bits = bit_budget());

/// Plain decimal for height 0, otherwise "expstar(n)", "exp(exp(b))" and so on,
/// followed by the offset.
std::string print_tower(const TowerNum& t);

/// Result of a calculator expression: a number or a comparison verdict.
struct TowerResult {
  std::optional<TowerNum> value;
  std::optional<Order> order;
};

/// Closed terms over decimal literals, + and * (exact), "- n" and "+ n" for
/// small n on tall values, exp, log, expstar, logstar, and cmp(a, b).
TowerResult eval_tower_expression(std::string_view text);
std::string print_tower_result(const TowerResult& r);

}  // namespace glkit
