#include <doctest.h>

#include "glkit/prover.hpp"

using namespace glkit;

namespace {

TreeModel refutation(const char* s) {
  const Formula f = parse_modal(s);
  const Verdict v = prove(f);
  REQUIRE(std::holds_alternative<Refuted>(v));
  const TreeModel m = std::get<Refuted>(v).model;
  CHECK_FALSE(forces(m, m.frame().root(), f));
  return m;
}
}  // namespace

TEST_CASE("known theorems") {
  for (const char* s : {"[]([]p->p)->[]p", "[](p->q)->([]p->[]q)", "[]p->[][]p", "T", "p | ~p", "[]T",
                        "<>p -> <>(p & []~p)", "[](<>T -> F) -> [][]F | []F"}) {
    INFO(s);
    const Formula f = parse_modal(s);
    const Verdict v = prove(f);
    REQUIRE(std::holds_alternative<Provable>(v));
    CHECK(check_derivation(std::get<Provable>(v).derivation, f));
    CHECK(is_gl_theorem(f));
  }
}

TEST_CASE("known non-theorems come with countermodels") {
  CHECK(refutation("<>T").frame().size() == 1);
  const TreeModel m = refutation("<>v -> (<>u -> <>(v&u))");
  CHECK(m.frame().size() == 3);
  CHECK(m.frame().children(m.frame().root()).size() == 2);
  refutation("p -> []p");
  refutation("[]p -> p");
  refutation("[][][]F");
  CHECK_FALSE(is_gl_theorem(parse_modal("[]p -> p")));
}

TEST_CASE("the prover's section-one countermodel") {
  const Verdict v = prove(parse_modal("<>v -> (<>u -> <>(v&u))"));
  CHECK(model_to_json(std::get<Refuted>(v).model).dump() ==
        R"({"parents":[null,0,0],"valuation":{"u":[2],"v":[1]}})");
}

TEST_CASE("derivation checking rejects broken trees") {
  const Formula lob = parse_modal("[]([]p->p)->[]p");
  Derivation d = std::get<Provable>(prove(lob)).derivation;
  CHECK(check_derivation(d));
  CHECK_FALSE(check_derivation(d, parse_modal("[]p")));
  CHECK_FALSE(check_derivation(Derivation{}));
  Derivation broken = d;
  REQUIRE_FALSE(broken.premises.empty());
  broken.premises.pop_back();
  CHECK_FALSE(check_derivation(broken));
  Derivation wrong_rule = d;
  wrong_rule.rule = Rule::OrRight;
  CHECK_FALSE(check_derivation(wrong_rule));
}

TEST_CASE("oracle") {
  CHECK(std::holds_alternative<NoCountermodelUpTo>(oracle_decide(parse_modal("[]p->[][]p"), 4)));
  CHECK(std::get<NoCountermodelUpTo>(oracle_decide(parse_modal("T"), 1)).max_worlds == 1);
  const OracleResult r = oracle_decide(parse_modal("p->[]p"), 2);
  REQUIRE(std::holds_alternative<RefutedBy>(r));
  const TreeModel m = std::get<RefutedBy>(r).model;
  CHECK(m.frame().size() == 2);
  CHECK(m.holds("p", 0));
  CHECK_FALSE(m.holds("p", 1));
  // a 5-chain refutes [][][][]F but no smaller tree does
  CHECK(std::holds_alternative<NoCountermodelUpTo>(oracle_decide(parse_modal("[][][][]F"), 4)));
  CHECK(std::holds_alternative<RefutedBy>(oracle_decide(parse_modal("[][][][]F"), 5)));
}

TEST_CASE("oracle agrees with the prover on small formulas") {
  const ModelOracle oracle(4);
  std::size_t n = 0;
  for_each_formula(3, {"p", "q"}, [&](const Formula& f) {
    ++n;
    CHECK(is_gl_theorem(f) == !oracle.find(f).has_value());
  });
  CHECK(n == count_formulas(3, 2));
}

TEST_CASE("oracle hits are genuine refutations") {
  const ModelOracle oracle(3);
  for_each_formula(2, {"p"}, [&](const Formula& f) {
    const OracleResult r = oracle.decide(f);
    if (const auto* hit = std::get_if<RefutedBy>(&r)) CHECK_FALSE(forces(hit->model, 0, f));
  });
}

TEST_CASE("verdict json") {
  const auto j = verdict_to_json(prove(parse_modal("[]p->[][]p")));
  CHECK(j["status"] == "provable");
  CHECK(j["derivation"]["rule"].is_string());
}
