// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "glkit/cli.hpp"
#include "glkit/emitter.hpp"
#include "glkit/prover.hpp"
#include "glkit/scenario.hpp"
#include "glkit/tower.hpp"

using namespace glkit;

namespace {

// Limits, in seconds.
constexpr double kGoldenLimit = 1.0;
constexpr double kAgreementLimit = 600.0;
constexpr double kKnownFormulaLimit = 1.0;
constexpr double kPartitionLimit = 300.0;
constexpr double kInjectionLimit = 300.0;

constexpr std::size_t kAgreementConnectives = 6;
constexpr std::size_t kAgreementWorlds = 5;
constexpr std::size_t kConfirmWorlds = 7;
constexpr std::size_t kFrameWorlds = 7;
constexpr std::size_t kLogStarIdentityMax = 40;
constexpr unsigned kNumeralMax = 100000;

const char* kSection1 = "<>v -> (<>u -> <>(v&u))";

// Displays f(v), f(u) as printed in the source text, then written in the canonical ascii syntax.
const char* kDisplayV =
    R"(\exists x(\mathsf{Prf}(x,\gnmb{0=1})\land \forall y <x (\lnot \mathsf{Prf}(y,\gnmb{0=1}))\land  \log^{\star}(x)\equiv 0\;\; (\mathrm{mod}\;\; 2)))";
const char* kDisplayU =
    R"(\exists x(\mathsf{Prf}(x,\gnmb{0=1})\land \forall y <x (\lnot \mathsf{Prf}(y,\gnmb{0=1}))\land  \log^{\star}(x)\equiv 1\;\; (\mathrm{mod}\;\; 2)))";
const char* kAsciiV = "exists x.(Prf(x,#(0=1)) & forall y < x.(~Prf(y,#(0=1))) & logstar(x) === 0 (mod 2))";
const char* kAsciiU = "exists x.(Prf(x,#(0=1)) & forall y < x.(~Prf(y,#(0=1))) & logstar(x) === 1 (mod 2))";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violated: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

void report(int id, const char* title, const Outcome& o, double secs) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << "criterion " << id << " [" << title << "]: " << (o.pass ? "PASS" : "FAIL") << " (" << timing << ")\n";
  for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  std::cout.flush();
}

// ---- bound-variable normalization ------------------------------------------

struct Renamer {
  std::vector<std::pair<std::string, std::string>> scope;
  std::size_t next = 0;

  std::string lookup(const std::string& v) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    return v;
  }

  ArithTerm term(const ArithTerm& t) {
    switch (t.kind()) {
      case TermKind::Zero:
      case TermKind::One: return t;
      case TermKind::Var: return ArithTerm::var(lookup(t.name()));
      case TermKind::Add: return ArithTerm::add(term(t.lhs()), term(t.rhs()));
      case TermKind::Mul: return ArithTerm::mul(term(t.lhs()), term(t.rhs()));
      case TermKind::Exp: return ArithTerm::exp(term(t.lhs()));
      case TermKind::Log: return ArithTerm::log(term(t.lhs()));
      case TermKind::ExpStar: return ArithTerm::exp_star(term(t.lhs()));
      case TermKind::LogStar: return ArithTerm::log_star(term(t.lhs()));
      case TermKind::Quote: return ArithTerm::quote(Renamer{}.formula(t.quoted()));
    }
    return t;
  }

  ArithFormula bind(const ArithFormula& f) {
    const std::string fresh = "b" + std::to_string(next++);
    std::optional<ArithTerm> bound;
    if (f.is_bounded()) bound = term(f.term());
    scope.emplace_back(f.var(), fresh);
    ArithFormula body = formula(f.body());
    scope.pop_back();
    switch (f.kind()) {
      case ArithKind::ForAll: return ArithFormula::forall(fresh, body);
      case ArithKind::Exists: return ArithFormula::exists(fresh, body);
      case ArithKind::BoundedForAll: return ArithFormula::bounded_forall(fresh, *bound, body);
      default: return ArithFormula::bounded_exists(fresh, *bound, body);
    }
  }

  ArithFormula formula(const ArithFormula& f) {
    switch (f.kind()) {
      case ArithKind::Eq: return ArithFormula::eq(term(f.left()), term(f.right()));
      case ArithKind::Less: return ArithFormula::less(term(f.left()), term(f.right()));
      case ArithKind::Leq: return ArithFormula::leq(term(f.left()), term(f.right()));
      case ArithKind::CongMod: return ArithFormula::cong_mod(term(f.term()), f.residue(), f.modulus());
      case ArithKind::Prf: return ArithFormula::prf(f.theory(), term(f.left()), term(f.right()));
      case ArithKind::Not: return ArithFormula::negation(formula(f.lhs()));
      case ArithKind::And: return ArithFormula::conj(formula(f.lhs()), formula(f.rhs()));
      case ArithKind::Or: return ArithFormula::disj(formula(f.lhs()), formula(f.rhs()));
      case ArithKind::Imp: return ArithFormula::imp(formula(f.lhs()), formula(f.rhs()));
      default: return bind(f);
    }
  }
};

std::string alpha_normal(const std::string& ascii) { return print_arith(Renamer{}.formula(parse_arith(ascii))); }

std::string strip_spaces(std::string s) {
  std::erase(s, ' ');
  return s;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) {
    s.replace(at, from.size(), to);
  }
  return s;
}

// Source-text macros to the printer's spelling of the same notation.
std::string normalize_display(std::string s) {
  s = replace_all(s, "\\gnmb{0=1}", "\\ulcorner 0=1\\urcorner");
  s = replace_all(s, "\\;\\;", "\\ ");
  return strip_spaces(s);
}

std::string line_after(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

// ---- shared data -------------------------------------------------------------

struct RefutationLog {
  std::uint64_t checked = 0;
  std::uint64_t invalid = 0;

  void check(const Formula& f, const Verdict& v) {
    if (const auto* r = std::get_if<Refuted>(&v)) {
      ++checked;
      if (forces(r->model, r->model.frame().root(), f)) ++invalid;
    }
  }
};

struct FrameKits {
  EvaluationKit plain;
  EvaluationKit simplified;
  std::vector<Scenario> scenarios;
};

// ---- criteria ------------------------------------------------------------------

Outcome golden(RefutationLog& refutations) {
  Outcome o;
  const Formula phi = parse_modal(kSection1);
  const Verdict v = prove(phi);
  o.require(std::holds_alternative<Refuted>(v), "prove declares the formula unprovable");
  refutations.check(phi, v);

  RunConfig prove_cfg;
  prove_cfg.command = Command::Prove;
  prove_cfg.formula = kSection1;
  prove_cfg.expect = Expectation::Unprovable;
  std::ostringstream out;
  std::ostringstream err;
  o.require(run(prove_cfg, out, err) == exit_code::ok, "prove --expect unprovable exits 0");

  RunConfig eval_cfg;
  eval_cfg.command = Command::Evaluate;
  eval_cfg.formula = kSection1;
  eval_cfg.simplify = true;
  std::ostringstream text;
  o.require(run(eval_cfg, text, err) == exit_code::ok, "evaluate --simplify exits 0");
  const std::string fv = line_after(text.str(), "f(v) = ");
  const std::string fu = line_after(text.str(), "f(u) = ");
  o.require(alpha_normal(fv) == alpha_normal(kAsciiV), "f(v) matches the display");
  o.require(alpha_normal(fu) == alpha_normal(kAsciiU), "f(u) matches the display");
  o.note("f(v) = " + fv);
  o.note("f(u) = " + fu);

  eval_cfg.format = OutputFormat::Latex;
  std::ostringstream latex;
  run(eval_cfg, latex, err);
  const std::string tv = line_after(latex.str(), "\\item $f(v)=");
  const std::string tu = line_after(latex.str(), "\\item $f(u)=");
  o.require(strip_spaces(tv) == normalize_display(kDisplayV) + "$", "LaTeX f(v) matches the display");
  o.require(strip_spaces(tu) == normalize_display(kDisplayU) + "$", "LaTeX f(u) matches the display");
  return o;
}

Outcome agreement(RefutationLog& refutations) {
  Outcome o;
  const ModelOracle oracle(kAgreementWorlds);
  std::uint64_t total = 0;
  std::uint64_t provable = 0;
  std::vector<Formula> refuted_only;   // prover refutes, oracle finds nothing
  std::vector<Formula> provable_refuted;  // prover proves, oracle refutes
  for_each_formula(kAgreementConnectives, {"p", "q"}, [&](const Formula& f) {
    ++total;
    const Verdict v = prove(f);
    const bool is_provable = std::holds_alternative<Provable>(v);
    refutations.check(f, v);
    provable += is_provable;
    const bool oracle_refutes = oracle.find(f).has_value();
    if (is_provable && oracle_refutes) provable_refuted.push_back(f);
    if (!is_provable && !oracle_refutes) refuted_only.push_back(f);
  });
  const std::uint64_t disagreements = refuted_only.size() + provable_refuted.size();
  o.require(total == count_formulas(kAgreementConnectives, 2), "formula family is complete");
  o.require(disagreements == 0, "prove and oracle_decide(., 5) agree on every formula");
  o.note(std::to_string(total) + " formulas, " + std::to_string(provable) + " provable, " +
         std::to_string(total - disagreements) + " agreements, " + std::to_string(disagreements) + " disagreements");
  o.note(std::to_string(provable_refuted.size()) + " provable formulas refuted by the oracle");
  if (!refuted_only.empty()) {
    const ModelOracle wide(kConfirmWorlds);
    std::size_t confirmed = 0;
    std::size_t min_worlds = SIZE_MAX;
    for (const Formula& f : refuted_only) {
      const Verdict v = prove(f);
      const TreeModel& m = std::get<Refuted>(v).model;
      if (!forces(m, m.frame().root(), f) && wide.find(f)) ++confirmed;
      min_worlds = std::min(min_worlds, m.frame().size());
    }
    o.note(std::to_string(refuted_only.size()) + " unprovable formulas have no countermodel with <= " +
           std::to_string(kAgreementWorlds) + " worlds; " + std::to_string(confirmed) +
           " of them are confirmed non-theorems (prover countermodel checked, oracle at " +
           std::to_string(kConfirmWorlds) + " worlds refutes); smallest prover countermodel has " +
           std::to_string(min_worlds) + " worlds");
    for (std::size_t i = 0; i < std::min<std::size_t>(5, refuted_only.size()); ++i) {
      o.note("  e.g. " + print_modal(refuted_only[i]));
    }
  }
  return o;
}

Outcome known_theorems(RefutationLog& refutations) {
  Outcome o;
  const char* theorems[] = {"[]([]p->p)->[]p", "[](p->q)->([]p->[]q)", "[]p->[][]p"};
  const char* non_theorems[] = {"<>T", "p->[]p", kSection1};
  for (const char* s : theorems) {
    const auto t0 = Clock::now();
    const Formula f = parse_modal(s);
    const Verdict v = prove(f);
    const bool ok = std::holds_alternative<Provable>(v) && check_derivation(std::get<Provable>(v).derivation, f);
    const double secs = seconds_since(t0);
    o.require(ok, std::string(s) + " is provable with a checked derivation");
    o.require(secs < kKnownFormulaLimit, std::string(s) + " decided within the time limit");
  }
  for (const char* s : non_theorems) {
    const auto t0 = Clock::now();
    const Formula f = parse_modal(s);
    const Verdict v = prove(f);
    bool ok = false;
    if (const auto* r = std::get_if<Refuted>(&v)) {
      ok = !forces(r->model, r->model.frame().root(), f);
      o.note(std::string(s) + ": countermodel " + model_to_json(r->model).dump());
    }
    refutations.check(f, v);
    const double secs = seconds_since(t0);
    o.require(ok, std::string(s) + " is refuted by a verified countermodel");
    o.require(secs < kKnownFormulaLimit, std::string(s) + " decided within the time limit");
  }
  return o;
}

Outcome countermodels(const RefutationLog& refutations) {
  Outcome o;
  o.require(refutations.invalid == 0, "forces(model, root, phi) is false for every Refuted verdict");
  o.require(refutations.checked > 0, "some Refuted verdicts were produced");
  o.note(std::to_string(refutations.checked) + " countermodels checked, " + std::to_string(refutations.invalid) +
         " invalid");
  return o;
}

std::vector<FrameKits> build_frame_kits() {
  std::vector<FrameKits> out;
  for (const TreeFrame& f : enumerate_frames(kFrameWorlds)) {
    EvaluationKit plain = build_kit(TreeModel(f, {}));
    EvaluationKit simplified = simplify_paper_form(plain);
    std::vector<Scenario> scenarios = enumerate_scenarios(plain);
    out.push_back({std::move(plain), std::move(simplified), std::move(scenarios)});
  }
  return out;
}

Outcome partition(const std::vector<FrameKits>& kits) {
  Outcome o;
  std::uint64_t scenarios = 0;
  std::uint64_t partition_violations = 0;
  std::uint64_t height_violations = 0;
  for (const FrameKits& k : kits) {
    for (const Scenario& s : k.scenarios) {
      ++scenarios;
      std::size_t true_f = 0;
      World realized = 0;
      for (World a = 0; a < k.plain.annotations.size(); ++a) {
        if (eval_sentence(s, k.plain, a, Which::F)) {
          ++true_f;
          realized = a;
        }
      }
      if (true_f != 1) {
        ++partition_violations;
        continue;
      }
      if (k.plain.heights[realized] != std::min(s.threshold, s.horizon)) ++height_violations;
    }
  }
  o.require(partition_violations == 0, "exactly one F_a is true");
  o.require(height_violations == 0, "the realized height is min(t, horizon)");
  o.note(std::to_string(kits.size()) + " frames, " + std::to_string(scenarios) + " scenarios, " +
         std::to_string(partition_violations) + " partition and " + std::to_string(height_violations) +
         " height violations");
  return o;
}

Outcome injection(const std::vector<FrameKits>& kits) {
  Outcome o;
  std::uint64_t steps = 0;
  std::uint64_t targets = 0;
  std::uint64_t violations = 0;
  std::uint64_t rejected = 0;
  for (const FrameKits& k : kits) {
    const EvaluationKit& kit = k.plain;
    const TreeFrame& frame = kit.model.frame();
    for (const Scenario& sigma : k.scenarios) {
      const World a = realized_world(sigma, kit);
      std::vector<bool> reached(frame.size(), false);
      std::function<void(const Scenario&, World)> walk = [&](const Scenario& s, World at) {
        for (World b : frame.children(at)) {
          ++steps;
          const Scenario next = inject(s, kit, b);
          bool ok = true;
          try {
            validate(next);
            ok = realized_world(next, kit) == b && next.threshold == kit.heights[b];
          } catch (const ScenarioError&) {
            ok = false;
          }
          for (const auto& [j, value] : s.least) {
            if (j >= kit.heights[at]) ok = ok && next.least.count(j) && next.least.at(j) == value;
          }
          if (!ok) {
            ++violations;
            continue;
          }
          reached[b] = true;
          walk(next, b);
        }
      };
      walk(sigma, a);
      for (World b = 0; b < frame.size(); ++b) {
        if (frame.precedes(a, b)) {
          ++targets;
          if (!reached[b]) ++violations;
        } else if (reached[b]) {
          ++violations;
        }
        if (frame.parent(b) != a) {
          try {
            inject(sigma, kit, b);
            ++violations;
          } catch (const ScenarioError&) {
            ++rejected;
          }
        }
      }
    }
  }
  o.require(violations == 0, "iterated inject reaches exactly the successors of the realized world");
  o.note(std::to_string(targets) + " (scenario, target) pairs, " + std::to_string(steps) + " single steps, " +
         std::to_string(rejected) + " non-successor targets rejected, " + std::to_string(violations) +
         " violations");
  return o;
}

// Direct value of exp^h(b)+c by repeated shifting.
std::optional<BigInt> direct_value(const TowerNum& t) {
  BigInt v = t.base();
  for (std::size_t i = 0; i < t.height(); ++i) {
    if (v > bit_budget()) return std::nullopt;
    v = BigInt(1) << static_cast<unsigned>(v);
  }
  return v + t.offset();
}

std::size_t direct_log_star(const BigInt& n) {
  BigInt e = 0;  // exp*(y)
  std::size_t y = 0;
  while (true) {
    if (e > bit_budget()) return y;
    const BigInt next = BigInt(1) << static_cast<unsigned>(e);
    if (next > n) return y;
    e = next;
    ++y;
  }
}

std::size_t direct_floor_log(const BigInt& n) {
  return n == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(n));
}

Outcome towers(const std::vector<FrameKits>& kits) {
  Outcome o;
  std::size_t max_mod = 1;
  for (const FrameKits& k : kits) max_mod = std::max(max_mod, max_modulus(k.plain));
  const std::vector<TowerNum> family = template_family(max_mod);

  std::vector<TowerNum> values;
  std::vector<BigInt> direct;
  auto add = [&](const TowerNum& t) {
    if (auto v = direct_value(t); v && boost::multiprecision::msb(*v + 1) < bit_budget()) {
      values.push_back(t);
      direct.push_back(*v);
    }
  };
  std::size_t family_denoted = 0;
  for (const TowerNum& t : family) {
    const std::size_t before = values.size();
    add(t);
    family_denoted += values.size() - before;
  }
  for (unsigned m = 0; m <= 6; ++m) {
    for (int d : {-1, 0, 1}) {
      if (m > 0 || d >= 0) add(tower_add_small(tower_exp_star(m), d));
    }
  }
  for (unsigned n : {0u, 3u, 5u, 15u, 17u, 255u, 256u, 1023u, 1024u, 65535u, 65537u}) add(make_int(n));
  for (unsigned k : {0u, 1u, 1000u, 200000u, 458752u}) {
    for (int d : {-1, 0, 7}) add(TowerNum(1, (BigInt(1) << 16) + k, d));
  }

  std::uint64_t compare_errors = 0;
  std::uint64_t log_star_errors = 0;
  std::uint64_t exp_errors = 0;
  std::uint64_t log_errors = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      const Order want = direct[i] < direct[j] ? Order::Less : direct[i] > direct[j] ? Order::Greater : Order::Equal;
      if (tower_compare(values[i], values[j]) != want) ++compare_errors;
    }
    if (tower_log_star(values[i]) != direct_log_star(direct[i])) ++log_star_errors;
    if (direct_value(tower_log(values[i])) != BigInt(direct_floor_log(direct[i]))) ++log_errors;
    if (direct[i] < bit_budget() && (values[i].height() == 0 || values[i].offset() == 0)) {
      if (direct_value(tower_exp(values[i])) != BigInt(1) << static_cast<unsigned>(direct[i])) ++exp_errors;
    }
  }

  // Members beyond the budget: order is lexicographic in (m, δ) and log* drops by one below exp*(m).
  std::uint64_t symbolic_errors = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const std::size_t m = 6 + i / 3;
    const int d = static_cast<int>(i % 3) - 1;
    if (tower_log_star(family[i]) != m - (d < 0 ? 1 : 0)) ++symbolic_errors;
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Order want = i < j ? Order::Less : i > j ? Order::Greater : Order::Equal;
      if (tower_compare(family[i], family[j]) != want) ++symbolic_errors;
    }
  }
  std::uint64_t identity_errors = 0;
  for (std::size_t m = 0; m <= kLogStarIdentityMax; ++m) {
    if (tower_log_star(tower_exp_star(m)) != m) ++identity_errors;
  }

  o.require(compare_errors == 0, "tower_compare agrees with direct comparison");
  o.require(log_star_errors == 0, "log* agrees with direct computation");
  o.require(log_errors == 0, "log agrees with direct floor-log2");
  o.require(exp_errors == 0, "exp agrees with direct shifting");
  o.require(symbolic_errors == 0, "template members beyond the budget order and log* correctly");
  o.require(identity_errors == 0, "log*(exp*(m)) = m for m <= 40");
  o.note(std::to_string(values.size()) + " denoted values (" + std::to_string(family_denoted) + " of " +
         std::to_string(family.size()) + " template members), " + std::to_string(values.size() * values.size()) +
         " comparisons");
  return o;
}

std::string text_of_bits(const std::string& bits) {
  std::string out;
  for (std::size_t i = 0; i + 8 <= bits.size(); i += 8) out.push_back(static_cast<char>(std::stoi(bits.substr(i, 8), nullptr, 2)));
  return out;
}

Outcome encoding(const std::vector<FrameKits>& kits) {
  Outcome o;
  std::vector<ArithFormula> corpus;
  for (const FrameKits& k : kits) {
    if (k.plain.model.frame().size() > 5) continue;
    for (const EvaluationKit* kit : {&k.plain, &k.simplified}) {
      corpus.insert(corpus.end(), kit->c_sentences.begin(), kit->c_sentences.end());
      corpus.insert(corpus.end(), kit->f_sentences.begin(), kit->f_sentences.end());
    }
  }
  for (const char* s : {kSection1, "<>T", "p->[]p", "<>p & <>q & <>(p & q)", "[][]p -> []q"}) {
    const Formula phi = parse_modal(s);
    const Verdict v = prove(phi);
    if (!std::holds_alternative<Refuted>(v)) continue;
    for (const EvaluationKit& kit : {build_kit(std::get<Refuted>(v).model),
                                     simplify_paper_form(build_kit(std::get<Refuted>(v).model))}) {
      corpus.push_back(evaluate_formula(kit, phi));
      for (const std::string& var : variables(phi)) corpus.push_back(evaluate_formula(kit, Formula::var(var)));
    }
  }

  std::uint64_t roundtrip_errors = 0;
  std::uint64_t length_errors = 0;
  for (const ArithFormula& f : corpus) {
    const std::string bits = bits_of(print_arith(f));
    const BigInt n = godel_encode(bits);
    if (godel_decode(n) != bits || godel_number(f) != n) ++roundtrip_errors;
    if (!(parse_arith(text_of_bits(godel_decode(n))) == f)) ++roundtrip_errors;
    if (floor_log2(n) != bits.size()) ++length_errors;
  }
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 2000; ++i) {
    std::string s(rng() % 300, '0');
    for (char& c : s) c = (rng() & 1) ? '1' : '0';
    const BigInt n = godel_encode(s);
    if (godel_decode(n) != s) ++roundtrip_errors;
    if (floor_log2(n) != s.size()) ++length_errors;
  }

  std::uint64_t numeral_errors = 0;
  for (unsigned n = 0; n <= kNumeralMax; ++n) {
    const ArithTerm t = numeral(n);
    const std::size_t bound = 8 * (direct_floor_log(n) + 1);
    if (eval_closed_term(t) != n || t.size() > bound) ++numeral_errors;
  }
  o.require(roundtrip_errors == 0, "Godel encoding round-trips on the emitted sentences");
  o.require(length_errors == 0, "floor-log2(encode(s)) = |s|");
  o.require(numeral_errors == 0, "eval(numeral(n)) = n with size <= 8*(floor(log2 n)+1) for n <= 100000");
  o.note(std::to_string(corpus.size()) + " emitted sentences, 2000 random strings, " +
         std::to_string(kNumeralMax + 1) + " numerals");
  return o;
}

Outcome simplifier(const std::vector<FrameKits>& kits) {
  Outcome o;
  std::uint64_t pairs = 0;
  std::uint64_t disagreements = 0;
  for (const FrameKits& k : kits) {
    for (const Scenario& s : k.scenarios) {
      for (World a = 0; a < k.plain.annotations.size(); ++a) {
        for (Which w : {Which::C, Which::F}) {
          ++pairs;
          if (eval_sentence(s, k.plain, a, w) != eval_sentence(s, k.simplified, a, w)) ++disagreements;
        }
      }
    }
  }
  o.require(disagreements == 0, "eval_sentence is unchanged by simplify_paper_form");
  o.note(std::to_string(pairs) + " (scenario, world, sentence) evaluations, " + std::to_string(disagreements) +
         " disagreements");
  return o;
}

template <typename F>
bool timed(int id, const char* title, double limit, F&& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(t0);
  if (limit > 0) o.require(secs < limit, "runtime under " + std::to_string(static_cast<int>(limit)) + " s");
  report(id, title, o, secs);
  return o.pass;
}

}  // namespace

int main() {
  RefutationLog refutations;
  bool all = true;
  all &= timed(1, "golden reproduction", kGoldenLimit, [&] { return golden(refutations); });
  all &= timed(2, "prover/oracle agreement", kAgreementLimit, [&] { return agreement(refutations); });
  all &= timed(3, "known-theorem suite", 0, [&] { return known_theorems(refutations); });
  all &= timed(4, "countermodel validity", 0, [&] { return countermodels(refutations); });

  const auto t0 = Clock::now();
  const std::vector<FrameKits> kits = build_frame_kits();
  const double setup = seconds_since(t0);
  std::cout << "    (kits and scenarios for " << kits.size() << " frames built in " << setup << " s)\n";

  all &= timed(5, "scenario partition and height law", kPartitionLimit, [&] { return partition(kits); });
  all &= timed(6, "injection reachability", kInjectionLimit, [&] { return injection(kits); });
  all &= timed(7, "tower/oracle agreement", 0, [&] { return towers(kits); });
  all &= timed(8, "encoding laws", 0, [&] { return encoding(kits); });
  all &= timed(9, "simplifier soundness", 0, [&] { return simplifier(kits); });
  std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << "\n";
  return all ? 0 : 1;
}
