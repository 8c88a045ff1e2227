#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "glkit/emitter.hpp"
#include "glkit/tower.hpp"

namespace glkit {

/// Which theories T_j = PA + <>^j T are inconsistent (exactly j ≥ threshold)
/// and the least inconsistency proof of each T_j with threshold ≤ j < horizon.
struct Scenario {
  std::size_t horizon = 0;
  std::size_t threshold = 0;
  std::map<std::size_t, TowerNum> least;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when no world, or more than one, is realized.
class PartitionViolation : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

/// Throws ScenarioError unless the scenario is well formed.
void validate(const Scenario& s);

enum class Which { C, F };

bool eval_annotation(const Scenario& s, const CAnnotation& a);
bool eval_sentence(const Scenario& s, const EvaluationKit& kit, World a, Which which);
World realized_world(const Scenario& s, const EvaluationKit& kit);

/// Moves from the realized world a to its immediate successor b by giving
/// T_{h(a)-1} a fresh least proof exp*(m') with m' in the residue class of b.
Scenario inject(const Scenario& s, const EvaluationKit& kit, World b);

/// Thresholds 0..horizon crossed with least values from
/// {exp*(m)+δ : 6 ≤ m ≤ 6+2·M, δ ∈ {-1,0,1}}, M the largest modulus of the
/// kit (1 if none).  The full product is used when it has at most
/// kFullProductLimit members, otherwise a pairwise covering set.
std::vector<Scenario> enumerate_scenarios(const EvaluationKit& kit);
inline constexpr std::size_t kFullProductLimit = 4096;

std::vector<TowerNum> template_family(std::size_t max_modulus);
std::size_t max_modulus(const EvaluationKit& kit);

nlohmann::json scenario_to_json(const Scenario& s);

}  // namespace glkit
