#include <doctest.h>

#include "glkit/prover.hpp"
#include "glkit/scenario.hpp"

using namespace glkit;

namespace {
EvaluationKit section1_kit() {
  return build_kit(std::get<Refuted>(prove(parse_modal("<>v -> (<>u -> <>(v&u))"))).model);
}

EvaluationKit frame_kit(std::vector<std::optional<World>> parents) {
  return build_kit(TreeModel(TreeFrame::from_parents(std::move(parents)), {}));
}

Scenario with_least(std::size_t horizon, std::size_t t, std::map<std::size_t, TowerNum> least) {
  return Scenario{horizon, t, std::move(least)};
}
}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(validate(with_least(1, 1, {})));
  CHECK_THROWS_AS(validate(with_least(1, 2, {})), ScenarioError);
  CHECK_THROWS_AS(validate(with_least(1, 0, {})), ScenarioError);
  CHECK_THROWS_AS(validate(with_least(1, 0, {{0, make_int(1)}})), ScenarioError);
  CHECK_NOTHROW(validate(with_least(2, 0, {{0, make_int(5)}, {1, make_int(5)}})));
}

TEST_CASE("section-one evaluation") {
  const EvaluationKit kit = section1_kit();
  const Scenario top = with_least(1, 1, {});
  CHECK(eval_sentence(top, kit, 0, Which::F));
  CHECK_FALSE(eval_sentence(top, kit, 1, Which::F));
  CHECK_FALSE(eval_sentence(top, kit, 2, Which::F));
  CHECK(realized_world(top, kit) == 0);

  const Scenario even = with_least(1, 0, {{0, tower_exp_star(8)}});
  CHECK(eval_sentence(even, kit, 1, Which::C));
  CHECK_FALSE(eval_sentence(even, kit, 2, Which::C));
  CHECK(realized_world(even, kit) == 1);
  const Scenario odd = with_least(1, 0, {{0, tower_exp_star(9)}});
  CHECK(realized_world(odd, kit) == 2);
  CHECK_THROWS_AS(eval_sentence(with_least(2, 2, {}), kit, 0, Which::F), ScenarioError);
}

TEST_CASE("three chain") {
  const EvaluationKit kit = frame_kit({std::nullopt, 0, 1});
  CHECK(realized_world(with_least(2, 1, {{1, make_int(4)}}), kit) == 1);
  const Scenario root = with_least(2, 2, {});
  CHECK(realized_world(root, kit) == 0);
  const Scenario mid = inject(root, kit, 1);
  CHECK(mid.threshold == 1);
  CHECK(realized_world(mid, kit) == 1);
  const Scenario leaf = inject(mid, kit, 2);
  CHECK(leaf.threshold == 0);
  CHECK(leaf.least.at(1) == mid.least.at(1));
  CHECK(tower_compare(leaf.least.at(0), mid.least.at(1)) == Order::Greater);
  CHECK(realized_world(leaf, kit) == 2);
  CHECK_THROWS_AS(inject(root, kit, 2), ScenarioError);
}

TEST_CASE("injection chooses the residue of the target") {
  const EvaluationKit kit = section1_kit();
  const Scenario root = with_least(1, 1, {});
  const Scenario to0 = inject(root, kit, 1);
  CHECK(to0.threshold == 0);
  CHECK(tower_log_star(to0.least.at(0)) % 2 == 0);
  CHECK(realized_world(to0, kit) == 1);
  const Scenario to1 = inject(root, kit, 2);
  CHECK(tower_log_star(to1.least.at(0)) % 2 == 1);
  CHECK(realized_world(to1, kit) == 2);
}

TEST_CASE("injection across several levels fills the skipped theories") {
  // root (height 3) with a 3-chain child and a leaf child
  const EvaluationKit kit = frame_kit({std::nullopt, 0, 1, 2, 0});
  const Scenario root = with_least(3, 3, {});
  const std::vector<World> succ = ordered_successors(kit.model.frame(), 0);
  const World leaf = 4;
  CHECK(succ.front() == leaf);
  const Scenario s = inject(root, kit, leaf);
  CHECK(s.threshold == 0);
  CHECK(s.least.at(1) == tower_exp(s.least.at(2)));
  CHECK(s.least.at(0) == s.least.at(1));
  CHECK(realized_world(s, kit) == leaf);
}

TEST_CASE("enumeration") {
  const auto one = enumerate_scenarios(frame_kit({std::nullopt}));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == with_least(0, 0, {}));

  const EvaluationKit kit = section1_kit();
  bool parity[2] = {false, false};
  for (const Scenario& s : enumerate_scenarios(kit)) {
    validate(s);
    if (s.threshold == 0) parity[tower_log_star(s.least.at(0)) % 2] = true;
  }
  CHECK(parity[0]);
  CHECK(parity[1]);

  std::set<std::size_t> thresholds;
  for (const Scenario& s : enumerate_scenarios(frame_kit({std::nullopt, 0, 1}))) thresholds.insert(s.threshold);
  CHECK(thresholds == std::set<std::size_t>{0, 1, 2});
}

TEST_CASE("partition, exclusivity and set lemma on small frames") {
  for (const TreeFrame& f : enumerate_frames(5)) {
    const EvaluationKit kit = build_kit(TreeModel(f, {}));
    for (const Scenario& s : enumerate_scenarios(kit)) {
      const World r = realized_world(s, kit);
      CHECK(kit.heights[r] == s.threshold);
      for (World a = 0; a < f.size(); ++a) {
        if (f.is_leaf(a)) continue;
        std::size_t true_siblings = 0;
        for (World b : f.children(a)) true_siblings += eval_sentence(s, kit, b, Which::C);
        CHECK(true_siblings <= 1);
      }
    }
  }
}

TEST_CASE("scenario json") {
  const auto j = scenario_to_json(with_least(1, 0, {{0, tower_add_small(tower_exp_star(7), -1)}}));
  CHECK(j.dump() == R"({"horizon":1,"least":{"0":"expstar(7)-1"},"threshold":0})");
}
