#include "glkit/tower.hpp"

#include <cctype>
#include <cstdlib>
#include <vector>

namespace glkit {

namespace {

const BigInt kCanonicalBase = BigInt(1) << 16;

BigInt pow2(const BigInt& e) {
  BigInt r = 0;
  boost::multiprecision::bit_set(r, static_cast<unsigned>(e));
  return r;
}

bool is_power_of_two(const BigInt& a) {
  return a > 0 && boost::multiprecision::lsb(a) == boost::multiprecision::msb(a);
}

Order cmp(const BigInt& a, const BigInt& b) {
  if (a < b) return Order::Less;
  if (a > b) return Order::Greater;
  return Order::Equal;
}

Order reverse(Order o) {
  if (o == Order::Less) return Order::Greater;
  if (o == Order::Greater) return Order::Less;
  return o;
}

// a versus exp^k(b), exactly, by comparing floor-log2(a) with exp^(k-1)(b).
Order cmp_exp(const BigInt& a, std::size_t k, const BigInt& b) {
  if (k == 0) return cmp(a, b);
  if (a == 0) return Order::Less;
  const BigInt l = floor_log2(a);
  const Order r = cmp_exp(l, k - 1, b);
  if (r != Order::Equal) return r;
  return is_power_of_two(a) ? Order::Equal : Order::Greater;
}

// Plain integer a versus the tall value exp^h(b) + c, h ≥ 1.
Order cmp_int_tall(const BigInt& a, std::size_t h, const BigInt& b, std::int64_t c) {
  const Order r = cmp_exp(a, h, b);
  if (c == 0 || a == 0) return c == 0 ? r : Order::Less;
  // The offset can only matter when exp^(h-1)(b) is floor-log2(a) or one more.
  const BigInt l = floor_log2(a);
  for (const BigInt& e : {l, BigInt(l + 1)}) {
    if (cmp_exp(e, h - 1, b) == Order::Equal) return cmp(a, pow2(e) + c);
  }
  return r;
}

std::size_t log_star_int(const BigInt& x) {
  if (x == 0) return 0;
  const std::size_t top = floor_log2(x);
  std::size_t y = 0;
  std::uint64_t e = 0;  // exp*(y); once it reaches 64 the next one exceeds any top
  while (e <= top) {
    ++y;
    if (e >= 63) break;
    e = std::uint64_t{1} << e;
  }
  return y;
}

// b == exp*(m) for some m.
bool is_exp_star(const BigInt& b) {
  if (b == 0) return true;
  if (!is_power_of_two(b)) return false;
  return is_exp_star(BigInt(floor_log2(b)));
}

}  // namespace

TowerNum::TowerNum(std::size_t height, BigInt base, std::int64_t offset)
    : height_(height), base_(std::move(base)), offset_(offset) {
  if (base_ < 0) throw ArithError("tower base must be a natural number");
  while (height_ > 0 && base_ < kCanonicalBase) {
    base_ = pow2(base_);
    --height_;
  }
  if (height_ == 0) {
    base_ += offset_;
    offset_ = 0;
    if (base_ < 0) throw ArithError("tower value would be negative");
  }
  if (offset_ > kMaxOffset || offset_ < -kMaxOffset) {
    throw ArithError("tower offset " + std::to_string(offset_) + " is out of range");
  }
}

std::string order_name(Order o) {
  switch (o) {
    case Order::Less: return "Less";
    case Order::Equal: return "Equal";
    case Order::Greater: return "Greater";
  }
  return "?";
}

TowerNum make_int(const BigInt& n) { return TowerNum(0, n); }

TowerNum tower_exp(const TowerNum& t) {
  if (t.height() > 0 && t.offset() != 0) {
    throw ArithError("exp of a tower with a nonzero offset is not representable");
  }
  return TowerNum(t.height() + 1, t.base());
}

TowerNum tower_exp_star(std::size_t m) {
  TowerNum t = make_int(0);
  for (std::size_t i = 0; i < m; ++i) t = tower_exp(t);
  return t;
}

TowerNum tower_add_small(const TowerNum& t, std::int64_t delta) {
  if (t.height() == 0) return TowerNum(0, t.base() + delta);
  return TowerNum(t.height(), t.base(), t.offset() + delta);
}

Order tower_compare(const TowerNum& s, const TowerNum& t) {
  if (s.height() == 0 && t.height() == 0) return cmp(s.base(), t.base());
  if (s.height() == 0) return cmp_int_tall(s.base(), t.height(), t.base(), t.offset());
  if (t.height() == 0) return reverse(cmp_int_tall(t.base(), s.height(), s.base(), s.offset()));
  // Both tall: distinct towers differ by at least 2^65536, far beyond any offset.
  const Order r = s.height() <= t.height() ? cmp_exp(s.base(), t.height() - s.height(), t.base())
                                           : reverse(cmp_exp(t.base(), s.height() - t.height(), s.base()));
  if (r != Order::Equal) return r;
  return cmp(BigInt(s.offset()), BigInt(t.offset()));
}

TowerNum tower_log(const TowerNum& t) {
  if (t.height() == 0) return make_int(floor_log2(t.base()));
  return TowerNum(t.height() - 1, t.base(), t.offset() < 0 ? -1 : 0);
}

std::size_t tower_log_star(const TowerNum& t) {
  const std::size_t inner = log_star_int(t.base());
  if (t.height() == 0) return inner;
  // Just below exp^h(b) the value drops one level exactly when b is itself exp*(inner).
  const bool drop = t.offset() < 0 && is_exp_star(t.base());
  return t.height() + inner - (drop ? 1 : 0);
}

std::size_t tower_residue(const TowerNum& t, std::size_t m) {
  if (m == 0) throw ArithError("modulus must be at least 1");
  return tower_log_star(t) % m;
}

std::optional<BigInt> tower_value(const TowerNum& t, std::size_t budget_bits) {
  BigInt v = t.base();
  for (std::size_t i = 0; i < t.height(); ++i) {
    if (v >= budget_bits) return std::nullopt;
    v = pow2(v);
  }
  v += t.offset();
  if (v > 0 && floor_log2(v) + 1 > budget_bits) return std::nullopt;
  return v;
}

std::string print_tower(const TowerNum& t) {
  std::string out;
  if (t.height() == 0) return t.base().str();
  const std::size_t m = log_star_int(t.base());
  if (is_exp_star(t.base())) {
    out = "expstar(" + std::to_string(t.height() + m) + ")";
  } else {
    out = t.base().str();
    for (std::size_t i = 0; i < t.height(); ++i) out = "exp(" + out + ")";
  }
  if (t.offset() > 0) out += "+" + std::to_string(t.offset());
  if (t.offset() < 0) out += "-" + std::to_string(-t.offset());
  return out;
}

// ---- calculator --------------------------------------------------------------

namespace {

class Calculator {
 public:
  explicit Calculator(std::string_view s) : s_(s) {}

  TowerResult run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    TowerResult r;
    if (peek_word() == "cmp") {
      word();
      expect('(');
      TowerNum a = expr();
      expect(',');
      TowerNum b = expr();
      expect(')');
      r.order = tower_compare(a, b);
    } else {
      r.value = expr();
    }
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::string_view peek_word() {
    skip();
    std::size_t j = pos_;
    while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
    return s_.substr(pos_, j - pos_);
  }

  std::string word() {
    std::string w(peek_word());
    pos_ += w.size();
    return w;
  }

  TowerNum expr() {
    TowerNum t = product();
    while (true) {
      const std::size_t at = pos_;
      if (accept('+')) {
        t = add(t, product(), at);
      } else if (accept('-')) {
        t = subtract(t, product(), at);
      } else {
        return t;
      }
    }
  }

  TowerNum product() {
    TowerNum t = atom();
    while (true) {
      const std::size_t at = pos_;
      if (!accept('*')) return t;
      TowerNum u = atom();
      if (t.height() > 0 || u.height() > 0) throw ParseError("product of tall values is not supported", at);
      check_bits(t.base() * u.base(), at);
      t = make_int(t.base() * u.base());
    }
  }

  TowerNum atom() {
    skip();
    const std::size_t at = pos_;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t j = pos_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      BigInt n(std::string(s_.substr(pos_, j - pos_)));
      pos_ = j;
      return make_int(n);
    }
    if (accept('(')) {
      TowerNum t = expr();
      expect(')');
      return t;
    }
    const std::string fn = word();
    if (fn.empty()) throw ParseError("expected a number or a function", at);
    expect('(');
    TowerNum arg = expr();
    expect(')');
    try {
      if (fn == "exp") return tower_exp(arg);
      if (fn == "log") return tower_log(arg);
      if (fn == "logstar") return make_int(tower_log_star(arg));
      if (fn == "expstar") {
        if (arg.height() > 0 || arg.base() > 64) throw ArithError("expstar argument too large");
        return tower_exp_star(static_cast<std::size_t>(arg.base()));
      }
    } catch (const ArithError& e) {
      throw ParseError(e.what(), at);
    }
    throw ParseError("unknown function '" + fn + "'", at);
  }

  TowerNum add(const TowerNum& a, const TowerNum& b, std::size_t at) {
    if (a.height() == 0 && b.height() == 0) {
      check_bits(a.base() + b.base(), at);
      return make_int(a.base() + b.base());
    }
    if (b.height() == 0 && b.base() <= TowerNum::kMaxOffset) return shift(a, static_cast<std::int64_t>(b.base()), at);
    if (a.height() == 0 && a.base() <= TowerNum::kMaxOffset) return shift(b, static_cast<std::int64_t>(a.base()), at);
    throw ParseError("sum of tall values is not supported", at);
  }

  TowerNum subtract(const TowerNum& a, const TowerNum& b, std::size_t at) {
    if (b.height() > 0) throw ParseError("subtracting a tall value is not supported", at);
    if (a.height() == 0) {
      if (b.base() > a.base()) throw ParseError("negative result", at);
      return make_int(a.base() - b.base());
    }
    if (b.base() > TowerNum::kMaxOffset) throw ParseError("offset out of range", at);
    return shift(a, -static_cast<std::int64_t>(b.base()), at);
  }

  TowerNum shift(const TowerNum& t, std::int64_t d, std::size_t at) {
    try {
      return tower_add_small(t, d);
    } catch (const ArithError& e) {
      throw ParseError(e.what(), at);
    }
  }

  void check_bits(const BigInt& v, std::size_t at) {
    if (v > 0 && floor_log2(v) + 1 > bit_budget()) throw ParseError("value exceeds the bit budget", at);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

TowerResult eval_tower_expression(std::string_view text) { return Calculator(text).run(); }

std::string print_tower_result(const TowerResult& r) {
  if (r.order) return order_name(*r.order);
  return print_tower(*r.value);
}

}  // namespace glkit
