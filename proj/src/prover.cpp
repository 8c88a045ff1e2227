#include "glkit/prover.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <set>
#include <stdexcept>
#include <type_traits>

#include <boost/dynamic_bitset.hpp>

namespace glkit {

Sequent Sequent::of(std::vector<Formula> left, std::vector<Formula> right) {
  auto normalize = [](std::vector<Formula>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(left);
  normalize(right);
  return {std::move(left), std::move(right)};
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "axiom";
    case Rule::TopRight: return "top-right";
    case Rule::BotLeft: return "bot-left";
    case Rule::NotLeft: return "not-left";
    case Rule::NotRight: return "not-right";
    case Rule::AndLeft: return "and-left";
    case Rule::AndRight: return "and-right";
    case Rule::OrLeft: return "or-left";
    case Rule::OrRight: return "or-right";
    case Rule::ImpLeft: return "imp-left";
    case Rule::ImpRight: return "imp-right";
    case Rule::DiaLeft: return "dia-left";
    case Rule::DiaRight: return "dia-right";
    case Rule::GlBox: return "gl-box";
  }
  return "unknown";
}

std::size_t Derivation::node_count() const {
  if (!conclusion) return 0;
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

namespace {

// ---------------------------------------------------------------------------
// Closure of the goal: every formula a sequent in the search can contain.

struct Entry {
  ModalKind kind;
  int a = -1;  // operand; for ◇A this is the index of □¬A
  int b = -1;
  Formula formula;
  std::string key;
  std::size_t rank = 0;  // preorder position of first occurrence in the goal
};

class Closure {
 public:
  explicit Closure(const Formula& goal) {
    const int g = visit(goal);
    // Gödel order: a binary string with a leading 1 is smaller iff it is
    // shorter, or equally long and lexicographically smaller.
    std::vector<int> order(entries_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      const auto& kx = entries_[x].key;
      const auto& ky = entries_[y].key;
      return kx.size() != ky.size() ? kx.size() < ky.size() : kx < ky;
    });
    std::vector<int> remap(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<int>(i);
    std::vector<Entry> sorted;
    sorted.reserve(order.size());
    for (int old : order) {
      Entry e = entries_[old];
      if (e.a >= 0) e.a = remap[e.a];
      if (e.b >= 0) e.b = remap[e.b];
      sorted.push_back(std::move(e));
    }
    entries_ = std::move(sorted);
    goal_ = remap[g];
  }

  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  int goal() const { return goal_; }

 private:
  int visit(const Formula& f) {
    std::string key = print_modal(f);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    const int id = static_cast<int>(entries_.size());
    entries_.push_back({f.kind(), -1, -1, f, key, next_rank_++});
    ids_.emplace(std::move(key), id);
    int a = -1;
    int b = -1;
    if (f.kind() == ModalKind::Dia) {
      a = visit(Formula::box(Formula::negation(f.lhs())));
    } else if (f.is_unary() || f.is_binary()) {
      a = visit(f.lhs());
      if (f.is_binary()) b = visit(f.rhs());
    }
    entries_[id].a = a;
    entries_[id].b = b;
    return id;
  }

  std::vector<Entry> entries_;
  std::map<std::string, int> ids_;
  std::size_t next_rank_ = 0;
  int goal_ = -1;
};

// ---------------------------------------------------------------------------
// Bit-set helpers over std::bitset and boost::dynamic_bitset.

template <class Bits>
Bits empty_bits(std::size_t n) {
  if constexpr (std::is_same_v<Bits, boost::dynamic_bitset<>>) {
    return Bits(n);
  } else {
    (void)n;
    return Bits();
  }
}

template <std::size_t N>
std::size_t first_bit(const std::bitset<N>& b) {
  return b._Find_first();
}
template <std::size_t N>
std::size_t next_bit(const std::bitset<N>& b, std::size_t i) {
  return b._Find_next(i);
}
template <std::size_t N>
constexpr std::size_t bits_end(const std::bitset<N>&) {
  return N;
}

inline std::size_t first_bit(const boost::dynamic_bitset<>& b) {
  auto i = b.find_first();
  return i == boost::dynamic_bitset<>::npos ? b.size() : i;
}
inline std::size_t next_bit(const boost::dynamic_bitset<>& b, std::size_t i) {
  auto j = b.find_next(i);
  return j == boost::dynamic_bitset<>::npos ? b.size() : j;
}
inline std::size_t bits_end(const boost::dynamic_bitset<>& b) { return b.size(); }

template <class Bits, class Fn>
void for_each_bit(const Bits& b, Fn&& fn) {
  for (std::size_t i = first_bit(b); i < bits_end(b); i = next_bit(b, i)) fn(i);
}

// ---------------------------------------------------------------------------
// Search

struct ModelNode {
  std::vector<std::size_t> atoms;  // closure indices of true variables
  std::vector<std::pair<std::size_t, ModelNode>> children;  // keyed by rank
};

struct Outcome {
  bool provable = false;
  Derivation proof;
  ModelNode model;
};

template <class Bits, bool kRecord>
class Search {
 public:
  explicit Search(const Closure& c)
      : c_(c),
        vars_(empty_bits<Bits>(c.size())),
        compound_(empty_bits<Bits>(c.size())),
        boxes_(empty_bits<Bits>(c.size())) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      switch (c[i].kind) {
        case ModalKind::Var: vars_.set(i); break;
        case ModalKind::Top: top_ = i; break;
        case ModalKind::Bot: bot_ = i; break;
        case ModalKind::Box: boxes_.set(i); break;
        default: compound_.set(i); break;
      }
    }
  }

  Outcome solve_goal() {
    Bits left = empty_bits<Bits>(c_.size());
    Bits right = empty_bits<Bits>(c_.size());
    right.set(static_cast<std::size_t>(c_.goal()));
    return solve(left, right);
  }

 private:
  Bits with(Bits b, int i, int j = -1) const {
    b.set(static_cast<std::size_t>(i));
    if (j >= 0) b.set(static_cast<std::size_t>(j));
    return b;
  }

  Sequent to_sequent(const Bits& left, const Bits& right) const {
    std::vector<Formula> l;
    std::vector<Formula> r;
    for_each_bit(left, [&](std::size_t i) { l.push_back(c_[i].formula); });
    for_each_bit(right, [&](std::size_t i) { r.push_back(c_[i].formula); });
    return Sequent::of(std::move(l), std::move(r));
  }

  Outcome closed(Rule rule, std::size_t principal, const Bits& left, const Bits& right,
                 std::vector<Derivation> premises = {}) const {
    Outcome out;
    out.provable = true;
    if constexpr (kRecord) {
      out.proof.conclusion = to_sequent(left, right);
      out.proof.rule = rule;
      out.proof.principal = c_[principal].formula;
      out.proof.premises = std::move(premises);
    }
    return out;
  }

  Outcome one(Rule rule, std::size_t i, const Bits& left, const Bits& right, const Bits& l1,
              const Bits& r1) {
    Outcome sub = solve(l1, r1);
    if (!sub.provable) return sub;
    std::vector<Derivation> premises;
    if constexpr (kRecord) premises.push_back(std::move(sub.proof));
    return closed(rule, i, left, right, std::move(premises));
  }

  Outcome two(Rule rule, std::size_t i, const Bits& left, const Bits& right, const Bits& l1,
              const Bits& r1, const Bits& l2, const Bits& r2) {
    Outcome first = solve(l1, r1);
    if (!first.provable) return first;
    Outcome second = solve(l2, r2);
    if (!second.provable) return second;
    std::vector<Derivation> premises;
    if constexpr (kRecord) {
      premises.push_back(std::move(first.proof));
      premises.push_back(std::move(second.proof));
    }
    return closed(rule, i, left, right, std::move(premises));
  }

  Outcome solve(const Bits& left, const Bits& right) {
    const Bits shared = left & right & vars_;
    if (shared.any()) return closed(Rule::Axiom, first_bit(shared), left, right);
    if (bot_ && left.test(*bot_)) return closed(Rule::BotLeft, *bot_, left, right);
    if (top_ && right.test(*top_)) return closed(Rule::TopRight, *top_, left, right);

    const Bits compound = (left | right) & compound_;
    if (compound.any()) {
      const std::size_t i = first_bit(compound);
      const Entry& e = c_[i];
      if (left.test(i)) {
        Bits l = left;
        l.reset(i);
        switch (e.kind) {
          case ModalKind::Not: return one(Rule::NotLeft, i, left, right, l, with(right, e.a));
          case ModalKind::And: return one(Rule::AndLeft, i, left, right, with(l, e.a, e.b), right);
          case ModalKind::Or:
            return two(Rule::OrLeft, i, left, right, with(l, e.a), right, with(l, e.b), right);
          case ModalKind::Imp:
            return two(Rule::ImpLeft, i, left, right, l, with(right, e.a), with(l, e.b), right);
          case ModalKind::Dia: return one(Rule::DiaLeft, i, left, right, l, with(right, e.a));
          default: break;
        }
      } else {
        Bits r = right;
        r.reset(i);
        switch (e.kind) {
          case ModalKind::Not: return one(Rule::NotRight, i, left, right, with(left, e.a), r);
          case ModalKind::And:
            return two(Rule::AndRight, i, left, right, left, with(r, e.a), left, with(r, e.b));
          case ModalKind::Or: return one(Rule::OrRight, i, left, right, left, with(r, e.a, e.b));
          case ModalKind::Imp:
            return one(Rule::ImpRight, i, left, right, with(left, e.a), with(r, e.b));
          case ModalKind::Dia: return one(Rule::DiaRight, i, left, right, with(left, e.a), r);
          default: break;
        }
      }
      throw std::logic_error("unexpected compound formula kind");
    }
    return box_rule(left, right);
  }

  // Saturated sequent: only atoms, constants and boxes remain.
  Outcome box_rule(const Bits& left, const Bits& right) {
    const Bits boxed_left = left & boxes_;
    Bits base = boxed_left;
    for_each_bit(boxed_left, [&](std::size_t j) { base.set(static_cast<std::size_t>(c_[j].a)); });

    Outcome failure;
    const Bits candidates = right & boxes_;
    for (std::size_t i = first_bit(candidates); i < bits_end(candidates);
         i = next_bit(candidates, i)) {
      const Bits l1 = with(base, static_cast<int>(i));
      Bits r1 = empty_bits<Bits>(c_.size());
      r1.set(static_cast<std::size_t>(c_[i].a));
      for (const auto& [seen_left, seen_box] : path_) {
        if (seen_box == i && seen_left == l1) {
          throw std::logic_error("box rule repeated on an identical sequent");
        }
      }
      path_.emplace_back(l1, i);
      Outcome sub = solve(l1, r1);
      path_.pop_back();
      if (sub.provable) {
        std::vector<Derivation> premises;
        if constexpr (kRecord) premises.push_back(std::move(sub.proof));
        return closed(Rule::GlBox, i, left, right, std::move(premises));
      }
      if constexpr (kRecord) failure.model.children.emplace_back(c_[i].rank, std::move(sub.model));
    }
    if constexpr (kRecord) {
      for_each_bit(left & vars_, [&](std::size_t j) { failure.model.atoms.push_back(j); });
      std::sort(failure.model.children.begin(), failure.model.children.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    return failure;
  }

  const Closure& c_;
  Bits vars_;
  Bits compound_;
  Bits boxes_;
  std::optional<std::size_t> top_;
  std::optional<std::size_t> bot_;
  std::vector<std::pair<Bits, std::size_t>> path_;
};

template <bool kRecord>
Outcome run_search(const Closure& c) {
  if (c.size() <= 64) return Search<std::bitset<64>, kRecord>(c).solve_goal();
  if (c.size() <= 512) return Search<std::bitset<512>, kRecord>(c).solve_goal();
  return Search<boost::dynamic_bitset<>, kRecord>(c).solve_goal();
}

void number_worlds(const ModelNode& node, std::optional<World> parent, const Closure& c,
                   std::vector<std::optional<World>>& parents,
                   std::map<std::string, std::vector<World>>& val) {
  const World id = parents.size();
  parents.push_back(parent);
  for (std::size_t atom : node.atoms) val[c[atom].formula.name()].push_back(id);
  for (const auto& [rank, child] : node.children) number_worlds(child, id, c, parents, val);
}

}  // namespace

Verdict prove(const Formula& f) {
  const Closure c(f);
  Outcome out = run_search<true>(c);
  if (out.provable) return Provable{std::move(out.proof)};
  std::vector<std::optional<World>> parents;
  std::map<std::string, std::vector<World>> val;
  for (const auto& v : variables(f)) val[v];
  number_worlds(out.model, std::nullopt, c, parents, val);
  return Refuted{TreeModel(TreeFrame::from_parents(std::move(parents)), std::move(val))};
}

bool is_gl_theorem(const Formula& f) {
  const Closure c(f);
  return run_search<false>(c).provable;
}

// ---------------------------------------------------------------------------
// Derivation checking

namespace {

using FormulaSet = std::set<Formula>;

FormulaSet as_set(const std::vector<Formula>& v) { return {v.begin(), v.end()}; }

bool sequent_is(const Sequent& s, const FormulaSet& left, const FormulaSet& right) {
  return as_set(s.left) == left && as_set(s.right) == right;
}

bool check_node(const Derivation& d) {
  if (!d.conclusion || !d.principal) return false;
  const FormulaSet left = as_set(d.conclusion->left);
  const FormulaSet right = as_set(d.conclusion->right);
  const Formula& p = *d.principal;
  const bool in_left = left.count(p) > 0;
  const bool in_right = right.count(p) > 0;

  auto premise_count = [&](std::size_t n) { return d.premises.size() == n; };
  auto premise_ok = [&](std::size_t k, const FormulaSet& l, const FormulaSet& r) {
    const auto& prem = d.premises[k];
    return prem.conclusion && sequent_is(*prem.conclusion, l, r);
  };
  auto minus = [](FormulaSet s, const Formula& f) {
    s.erase(f);
    return s;
  };
  auto plus = [](FormulaSet s, std::initializer_list<Formula> fs) {
    for (const auto& f : fs) s.insert(f);
    return s;
  };

  switch (d.rule) {
    case Rule::Axiom:
      return premise_count(0) && p.kind() == ModalKind::Var && in_left && in_right;
    case Rule::TopRight: return premise_count(0) && p.kind() == ModalKind::Top && in_right;
    case Rule::BotLeft: return premise_count(0) && p.kind() == ModalKind::Bot && in_left;
    case Rule::NotLeft:
      return premise_count(1) && p.kind() == ModalKind::Not && in_left &&
             premise_ok(0, minus(left, p), plus(right, {p.lhs()}));
    case Rule::NotRight:
      return premise_count(1) && p.kind() == ModalKind::Not && in_right &&
             premise_ok(0, plus(left, {p.lhs()}), minus(right, p));
    case Rule::AndLeft:
      return premise_count(1) && p.kind() == ModalKind::And && in_left &&
             premise_ok(0, plus(minus(left, p), {p.lhs(), p.rhs()}), right);
    case Rule::AndRight:
      return premise_count(2) && p.kind() == ModalKind::And && in_right &&
             premise_ok(0, left, plus(minus(right, p), {p.lhs()})) &&
             premise_ok(1, left, plus(minus(right, p), {p.rhs()}));
    case Rule::OrLeft:
      return premise_count(2) && p.kind() == ModalKind::Or && in_left &&
             premise_ok(0, plus(minus(left, p), {p.lhs()}), right) &&
             premise_ok(1, plus(minus(left, p), {p.rhs()}), right);
    case Rule::OrRight:
      return premise_count(1) && p.kind() == ModalKind::Or && in_right &&
             premise_ok(0, left, plus(minus(right, p), {p.lhs(), p.rhs()}));
    case Rule::ImpLeft:
      return premise_count(2) && p.kind() == ModalKind::Imp && in_left &&
             premise_ok(0, minus(left, p), plus(right, {p.lhs()})) &&
             premise_ok(1, plus(minus(left, p), {p.rhs()}), right);
    case Rule::ImpRight:
      return premise_count(1) && p.kind() == ModalKind::Imp && in_right &&
             premise_ok(0, plus(left, {p.lhs()}), plus(minus(right, p), {p.rhs()}));
    case Rule::DiaLeft: {
      if (!premise_count(1) || p.kind() != ModalKind::Dia || !in_left) return false;
      const Formula unfolded = Formula::box(Formula::negation(p.lhs()));
      return premise_ok(0, minus(left, p), plus(right, {unfolded}));
    }
    case Rule::DiaRight: {
      if (!premise_count(1) || p.kind() != ModalKind::Dia || !in_right) return false;
      const Formula unfolded = Formula::box(Formula::negation(p.lhs()));
      return premise_ok(0, plus(left, {unfolded}), minus(right, p));
    }
    case Rule::GlBox: {
      if (!premise_count(1) || p.kind() != ModalKind::Box || !in_right) return false;
      const auto& prem = d.premises[0];
      if (!prem.conclusion) return false;
      const FormulaSet pl = as_set(prem.conclusion->left);
      if (as_set(prem.conclusion->right) != FormulaSet{p.lhs()}) return false;
      if (pl.count(p) == 0) return false;
      // pl must be Γ ∪ □Γ ∪ {□B} for some □Γ taken from the conclusion's antecedent.
      FormulaSet expected{p};
      for (const auto& f : pl) {
        if (f.kind() == ModalKind::Box && left.count(f) > 0 && pl.count(f.lhs()) > 0) {
          expected.insert(f);
          expected.insert(f.lhs());
        }
      }
      return expected == pl;
    }
  }
  return false;
}

bool check_tree(const Derivation& d) {
  if (!check_node(d)) return false;
  return std::all_of(d.premises.begin(), d.premises.end(), check_tree);
}

}  // namespace

bool check_derivation(const Derivation& d) {
  if (!d.conclusion || !d.conclusion->left.empty() || d.conclusion->right.size() != 1) {
    return false;
  }
  return check_tree(d);
}

bool check_derivation(const Derivation& d, const Formula& goal) {
  if (!d.conclusion || !d.conclusion->left.empty() ||
      d.conclusion->right != std::vector<Formula>{goal}) {
    return false;
  }
  return check_tree(d);
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json sequent_to_json(const Sequent& s) {
  nlohmann::json left = nlohmann::json::array();
  nlohmann::json right = nlohmann::json::array();
  for (const auto& f : s.left) left.push_back(print_modal(f));
  for (const auto& f : s.right) right.push_back(print_modal(f));
  return {{"left", left}, {"right", right}};
}

nlohmann::json derivation_to_json(const Derivation& d) {
  if (!d.conclusion) return nullptr;
  nlohmann::json j{{"sequent", sequent_to_json(*d.conclusion)}, {"rule", rule_name(d.rule)}};
  if (d.principal) j["principal"] = print_modal(*d.principal);
  nlohmann::json premises = nlohmann::json::array();
  for (const auto& p : d.premises) premises.push_back(derivation_to_json(p));
  j["premises"] = premises;
  return j;
}

nlohmann::json verdict_to_json(const Verdict& v) {
  if (const auto* p = std::get_if<Provable>(&v)) {
    return {{"status", "provable"}, {"derivation", derivation_to_json(p->derivation)}};
  }
  return {{"status", "refuted"}, {"model", model_to_json(std::get<Refuted>(v).model)}};
}

}  // namespace glkit
