#include "glkit/scenario.hpp"

#include <algorithm>
#include <set>

namespace glkit {

void validate(const Scenario& s) {
  if (s.threshold > s.horizon) throw ScenarioError("threshold exceeds the horizon");
  if (s.least.size() != s.horizon - s.threshold) {
    throw ScenarioError("least values must cover exactly the theories threshold..horizon-1");
  }
  for (const auto& [j, v] : s.least) {
    if (j < s.threshold || j >= s.horizon) {
      throw ScenarioError("least value given for theory " + std::to_string(j) + " outside the range");
    }
    if (tower_compare(v, make_int(2)) == Order::Less) throw ScenarioError("least values must be at least 2");
  }
}

namespace {

const TowerNum& least_of(const Scenario& s, std::size_t j) {
  auto it = s.least.find(j);
  if (it == s.least.end()) throw ScenarioError("no least proof recorded for theory " + std::to_string(j));
  return it->second;
}

// w < exp(exp(k)), via floor-log2: w < 2^(2^k) iff log(w) = 0 or log(log(w)) < k.
bool below_double_exp(const TowerNum& w, const TowerNum& k) {
  const TowerNum a = tower_log(w);
  if (tower_compare(a, make_int(0)) == Order::Equal) return true;
  return tower_compare(tower_log(a), k) == Order::Less;
}

bool eval_indexed(const Scenario& s, const IndexedC& c) {
  const std::size_t k = c.parent_theory.k;
  if (k < s.threshold) return false;
  const TowerNum& lk = least_of(s, k);
  if (tower_residue(lk, c.modulus) != c.residue) return false;
  if (c.witness_elided) return true;
  const std::size_t w = c.witness_theory.k;
  if (w < s.threshold) return false;
  return below_double_exp(least_of(s, w), lk);
}

void check_horizon(const Scenario& s, const EvaluationKit& kit) {
  const World root = kit.model.frame().root();
  if (s.horizon != kit.heights[root]) {
    throw ScenarioError("scenario horizon " + std::to_string(s.horizon) + " does not match the kit's root height " +
                        std::to_string(kit.heights[root]));
  }
}

}  // namespace

bool eval_annotation(const Scenario& s, const CAnnotation& a) {
  if (std::holds_alternative<RootC>(a)) return true;
  if (const auto* c = std::get_if<IndexedC>(&a)) return eval_indexed(s, *c);
  const auto& last = std::get<LastC>(a);
  if (last.residue_form) {
    const std::size_t k = last.parent_theory.k;
    const std::size_t n = last.siblings.size();
    return k >= s.threshold && tower_residue(least_of(s, k), n + 1) == n;
  }
  if (last.box_level < s.threshold + 1) return false;
  return std::none_of(last.siblings.begin(), last.siblings.end(),
                      [&](const IndexedC& c) { return eval_indexed(s, c); });
}

bool eval_sentence(const Scenario& s, const EvaluationKit& kit, World a, Which which) {
  check_horizon(s, kit);
  if (a >= kit.annotations.size()) throw ModelError("unknown world " + std::to_string(a));
  if (which == Which::C) return eval_annotation(s, kit.annotations[a]);
  if (kit.heights[a] > s.threshold) return false;
  for (World b : kit.model.frame().chain_to(a)) {
    if (!eval_annotation(s, kit.annotations[b])) return false;
  }
  return true;
}

World realized_world(const Scenario& s, const EvaluationKit& kit) {
  std::vector<World> hits;
  for (World a = 0; a < kit.annotations.size(); ++a) {
    if (eval_sentence(s, kit, a, Which::F)) hits.push_back(a);
  }
  if (hits.size() != 1) {
    throw PartitionViolation(std::to_string(hits.size()) + " worlds have a true F sentence (threshold " +
                             std::to_string(s.threshold) + ")");
  }
  return hits[0];
}

Scenario inject(const Scenario& s, const EvaluationKit& kit, World b) {
  const TreeFrame& frame = kit.model.frame();
  const World a = realized_world(s, kit);
  if (b >= frame.size() || frame.parent(b) != a) {
    throw ScenarioError("world " + std::to_string(b) + " is not an immediate successor of the realized world " +
                        std::to_string(a));
  }
  const std::vector<World> succ = ordered_successors(frame, a);
  const std::size_t k = static_cast<std::size_t>(std::find(succ.begin(), succ.end(), b) - succ.begin());
  const std::size_t mod = succ.size();

  TowerNum mx = tower_exp_star(6);
  if (!s.least.empty()) {
    mx = s.least.begin()->second;
    for (const auto& [j, v] : s.least) {
      if (tower_compare(v, mx) == Order::Greater) mx = v;
    }
  }
  const std::size_t m0 = tower_log_star(mx) + 4;
  const std::size_t m = m0 + (k + mod - m0 % mod) % mod;
  const TowerNum d = tower_exp_star(m);

  const std::size_t ha = kit.heights[a];
  const std::size_t hb = kit.heights[b];
  Scenario out = s;
  out.threshold = hb;
  out.least[ha - 1] = d;
  for (std::size_t j = hb; j + 1 < ha; ++j) out.least[j] = tower_exp(d);
  return out;
}

std::size_t max_modulus(const EvaluationKit& kit) {
  std::size_t m = 1;
  for (const CAnnotation& a : kit.annotations) {
    if (const auto* c = std::get_if<IndexedC>(&a)) m = std::max(m, c->modulus);
    if (const auto* last = std::get_if<LastC>(&a)) m = std::max(m, last->siblings.size() + 1);
  }
  return m;
}

std::vector<TowerNum> template_family(std::size_t max_mod) {
  std::vector<TowerNum> out;
  for (std::size_t m = 6; m <= 6 + 2 * max_mod; ++m) {
    const TowerNum base = tower_exp_star(m);
    for (std::int64_t delta : {-1, 0, 1}) out.push_back(tower_add_small(base, delta));
  }
  return out;
}

std::vector<Scenario> enumerate_scenarios(const EvaluationKit& kit) {
  const std::size_t horizon = kit.heights[kit.model.frame().root()];
  const std::vector<TowerNum> family = template_family(max_modulus(kit));
  const std::size_t t_count = family.size();

  std::vector<Scenario> out;
  for (std::size_t t = 0; t <= horizon; ++t) {
    const std::size_t slots = horizon - t;
    std::set<std::vector<std::size_t>> rows;
    std::size_t product = 1;
    for (std::size_t i = 0; i < slots && product <= kFullProductLimit; ++i) product *= t_count;
    if (product <= kFullProductLimit) {
      std::vector<std::size_t> row(slots, 0);
      while (true) {
        rows.insert(row);
        std::size_t i = 0;
        while (i < slots && ++row[i] == t_count) row[i++] = 0;
        if (i == slots) break;
      }
    } else {
      // Every pair of slots sees every pair of templates; the other slots follow the diagonal.
      for (std::size_t v = 0; v < t_count; ++v) rows.insert(std::vector<std::size_t>(slots, v));
      for (std::size_t i = 0; i < slots; ++i) {
        for (std::size_t j = i + 1; j < slots; ++j) {
          for (std::size_t vi = 0; vi < t_count; ++vi) {
            for (std::size_t vj = 0; vj < t_count; ++vj) {
              std::vector<std::size_t> row(slots, vi);
              row[j] = vj;
              rows.insert(row);
            }
          }
        }
      }
    }
    for (const auto& row : rows) {
      Scenario s{horizon, t, {}};
      for (std::size_t i = 0; i < slots; ++i) s.least.emplace(t + i, family[row[i]]);
      out.push_back(std::move(s));
    }
  }
  return out;
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json least = nlohmann::json::object();
  for (const auto& [j, v] : s.least) least[std::to_string(j)] = print_tower(v);
  return {{"horizon", s.horizon}, {"threshold", s.threshold}, {"least", least}};
}

}  // namespace glkit
