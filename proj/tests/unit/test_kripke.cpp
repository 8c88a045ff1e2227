#include <doctest.h>

#include "glkit/kripke.hpp"

using namespace glkit;

namespace {
TreeFrame frame(std::vector<std::optional<World>> parents) { return TreeFrame::from_parents(std::move(parents)); }
TreeModel section1_model() { return TreeModel(frame({std::nullopt, 0, 0}), {{"v", {1}}, {"u", {2}}}); }
}  // namespace

TEST_CASE("frames reject malformed parent arrays") {
  CHECK_THROWS_AS(frame({}), ModelError);
  CHECK_THROWS_AS(frame({std::nullopt, std::nullopt}), ModelError);
  CHECK_THROWS_AS(frame({1, 0}), ModelError);
  CHECK_THROWS_AS(frame({std::nullopt, 5}), ModelError);
}

TEST_CASE("heights") {
  const TreeFrame f = section1_model().frame();
  CHECK(height(f, 1) == 0);
  CHECK(height(f, 0) == 1);
  const TreeFrame chain = frame({std::nullopt, 0, 1});
  CHECK(height(chain, 0) == 2);
  CHECK(chain.heights() == std::vector<std::size_t>{2, 1, 0});
  CHECK(chain.precedes(0, 2));
  CHECK_FALSE(chain.precedes(2, 0));
  CHECK_FALSE(chain.precedes(1, 1));
  CHECK(chain.chain_to(2) == std::vector<World>{0, 1, 2});
}

TEST_CASE("forcing") {
  const TreeModel m = section1_model();
  CHECK(forces(m, 1, parse_modal("[]F")));
  CHECK(forces(m, 2, parse_modal("[]F")));
  CHECK_FALSE(forces(m, 0, parse_modal("<>v -> (<>u -> <>(v&u))")));
  CHECK(forces(m, 0, parse_modal("<>v")));
  CHECK(forces(m, 0, parse_modal("<>u")));
  CHECK_FALSE(forces(m, 0, parse_modal("<>(v&u)")));
  CHECK(forces(m, 0, parse_modal("[]([]p->p)->[]p")));
}

TEST_CASE("ordered successors") {
  const TreeFrame one = frame({std::nullopt, 0});
  CHECK(ordered_successors(one, 0) == std::vector<World>{1});
  CHECK(ordered_successors(section1_model().frame(), 0) == std::vector<World>{1, 2});
  // child 1 has height 2, child 2 is a leaf
  const TreeFrame f = frame({std::nullopt, 0, 0, 1, 3});
  CHECK(ordered_successors(f, 0) == std::vector<World>{2, 1});
  // two maximal children: the larger id goes last
  const TreeFrame g = frame({std::nullopt, 0, 0, 0, 1, 3});
  CHECK(ordered_successors(g, 0) == std::vector<World>{1, 2, 3});
  const TreeFrame h = frame({std::nullopt, 0, 0, 0, 3, 1});
  CHECK(ordered_successors(h, 0) == std::vector<World>{1, 2, 3});
  CHECK_THROWS_AS(ordered_successors(one, 1), ModelError);
}

TEST_CASE("frame enumeration counts rooted trees") {
  // rooted unlabeled trees with n nodes: 1, 1, 2, 4, 9, 20, 48
  const std::size_t cumulative[] = {1, 2, 4, 8, 17, 37, 85};
  for (std::size_t n = 1; n <= 7; ++n) CHECK(enumerate_frames(n).size() == cumulative[n - 1]);
  for (const TreeFrame& f : enumerate_frames(5)) {
    CHECK(f.root() == 0);
    for (World w = 1; w < f.size(); ++w) CHECK(*f.parent(w) < w);
  }
}

TEST_CASE("model stream") {
  ModelStream empty(1, {});
  CHECK(empty.next().has_value());
  CHECK_FALSE(empty.next().has_value());
  ModelStream two(3, {"p"});
  std::size_t n = 0;
  while (two.next()) ++n;
  CHECK(n == 2 + 4 + 8 + 8);
  const TreeModel m = model_from_index(frame({std::nullopt, 0}), {"p", "q"}, 0b1001);
  CHECK(m.holds("p", 0));
  CHECK_FALSE(m.holds("p", 1));
  CHECK_FALSE(m.holds("q", 0));
  CHECK(m.holds("q", 1));
}

TEST_CASE("model json round trip") {
  const TreeModel m = section1_model();
  const auto j = model_to_json(m);
  CHECK(j.dump() == R"({"parents":[null,0,0],"valuation":{"u":[2],"v":[1]}})");
  CHECK(model_from_json(j) == m);
}
