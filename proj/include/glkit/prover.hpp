#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "glkit/kripke.hpp"
#include "glkit/modal.hpp"

namespace glkit {

/// Γ ⇒ Δ over finite sets; both sides are kept sorted and duplicate-free.
struct Sequent {
  std::vector<Formula> left;
  std::vector<Formula> right;

  static Sequent of(std::vector<Formula> left, std::vector<Formula> right);
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

enum class Rule {
  Axiom,     // shared atom
  TopRight,
  BotLeft,
  NotLeft,
  NotRight,
  AndLeft,
  AndRight,
  OrLeft,
  OrRight,
  ImpLeft,
  ImpRight,
  DiaLeft,   // Γ ⇒ □¬A, Δ  /  Γ, ◇A ⇒ Δ
  DiaRight,  // Γ, □¬A ⇒ Δ  /  Γ ⇒ ◇A, Δ
  GlBox,     // Γ, □Γ, □B ⇒ B  /  Θ, □Γ ⇒ □B, Λ
};

std::string rule_name(Rule r);

/// A default-constructed derivation has no conclusion and is never valid.
struct Derivation {
  std::optional<Sequent> conclusion;
  Rule rule = Rule::Axiom;
  std::optional<Formula> principal;
  std::vector<Derivation> premises;

  std::size_t node_count() const;
};

struct Provable {
  Derivation derivation;
};

struct Refuted {
  TreeModel model;
};

using Verdict = std::variant<Provable, Refuted>;

/// Backward proof search in the GL sequent calculus.  Decomposes the
/// smallest-Gödel-number compound formula first; saturated sequents try the
/// box rule on each boxed succedent formula in the same order.  Failed
/// saturated sequents become worlds of the returned countermodel; worlds are
/// numbered in preorder and the successors created by the box rule follow the
/// order in which their boxed formulas first occur in the input.
Verdict prove(const Formula& f);

/// Same search as prove() without building certificates.
bool is_gl_theorem(const Formula& f);

/// Every node is a correct rule instance and the root sequent is ⇒ φ for a single φ.
bool check_derivation(const Derivation& d);
/// As above, with the root required to be exactly ⇒ goal.
bool check_derivation(const Derivation& d, const Formula& goal);

struct RefutedBy {
  TreeModel model;
};

struct NoCountermodelUpTo {
  std::size_t max_worlds;
};

using OracleResult = std::variant<RefutedBy, NoCountermodelUpTo>;

/// Exhaustive referee over ModelStream(max_worlds, variables(f)): returns the
/// first model (in stream order) whose root refutes `f`.  Valuations are
/// evaluated 64 at a time with bit-parallel forcing.
class ModelOracle {
 public:
  explicit ModelOracle(std::size_t max_worlds);

  OracleResult decide(const Formula& f) const;

  /// Position of the first refuting model in the stream: frame number in
  /// frames() and valuation index as in model_from_index().
  struct Hit {
    std::size_t frame;
    std::uint64_t valuation;
  };
  /// decide() without materializing the model.
  std::optional<Hit> find(const Formula& f) const;

  const std::vector<TreeFrame>& frames() const { return frames_; }
  std::size_t max_worlds() const { return max_worlds_; }

 private:
  std::size_t max_worlds_;
  std::vector<TreeFrame> frames_;
};

OracleResult oracle_decide(const Formula& f, std::size_t max_worlds);

nlohmann::json sequent_to_json(const Sequent& s);
nlohmann::json derivation_to_json(const Derivation& d);
nlohmann::json verdict_to_json(const Verdict& v);

}  // namespace glkit
