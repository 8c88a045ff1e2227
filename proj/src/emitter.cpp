#include "glkit/emitter.hpp"

#include <algorithm>
#include <optional>

namespace glkit {

namespace {

ArithTerm x_var() { return ArithTerm::var("x"); }
ArithTerm y_var() { return ArithTerm::var("y"); }

ArithFormula inconsistency_proof(TheoryId k, const ArithTerm& proof) {
  return ArithFormula::prf(k, proof, quote(falsity()));
}

// exists x.(Prf_k(x,#(0=1)) & forall y < x.(~Prf_k(y,#(0=1))) & logstar(x) === i (mod m) [& witness])
ArithFormula least_proof_sentence(TheoryId k, std::size_t residue, std::size_t modulus,
                                  std::optional<TheoryId> witness) {
  ArithFormula body = ArithFormula::conj(
      inconsistency_proof(k, x_var()),
      ArithFormula::bounded_forall("y", x_var(), ArithFormula::negation(inconsistency_proof(k, y_var()))));
  body = ArithFormula::conj(body, ArithFormula::cong_mod(ArithTerm::log_star(x_var()), residue, modulus));
  if (witness) {
    body = ArithFormula::conj(
        body, ArithFormula::bounded_exists("y", ArithTerm::exp(ArithTerm::exp(x_var())),
                                           inconsistency_proof(*witness, y_var())));
  }
  return ArithFormula::exists("x", body);
}

ArithFormula conjunction(const std::vector<ArithFormula>& parts) {
  if (parts.empty()) return truth();
  ArithFormula f = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) f = ArithFormula::conj(f, parts[i]);
  return f;
}

ArithFormula indexed_sentence(const IndexedC& c) {
  return least_proof_sentence(c.parent_theory, c.residue, c.modulus,
                              c.witness_elided ? std::nullopt : std::optional<TheoryId>(c.witness_theory));
}

ArithFormula f_sentence(const EvaluationKit& kit, World a, bool drop_trivial) {
  std::vector<ArithFormula> parts;
  for (World b : kit.model.frame().chain_to(a)) parts.push_back(kit.c_sentences[b]);
  parts.push_back(diamond_n(kit.heights[a], truth()));
  if (drop_trivial) {
    const ArithFormula t = truth();
    std::erase_if(parts, [&](const ArithFormula& p) { return p == t; });
  }
  return conjunction(parts);
}

}  // namespace

ArithFormula annotation_sentence(const CAnnotation& a) {
  if (std::holds_alternative<RootC>(a)) return truth();
  if (const auto* c = std::get_if<IndexedC>(&a)) return indexed_sentence(*c);
  const auto& last = std::get<LastC>(a);
  const std::size_t n = last.siblings.size();
  if (last.residue_form) return least_proof_sentence(last.parent_theory, n, n + 1, std::nullopt);
  std::vector<ArithFormula> parts{box_n(last.box_level, falsity())};
  for (const IndexedC& s : last.siblings) parts.push_back(ArithFormula::negation(indexed_sentence(s)));
  return conjunction(parts);
}

EvaluationKit build_kit(const TreeModel& model) {
  const TreeFrame& frame = model.frame();
  const std::size_t size = frame.size();
  EvaluationKit kit{model, frame.heights(), {}, {}, {}, false};
  kit.c_sentences.assign(size, truth());
  kit.annotations.assign(size, RootC{});

  for (World a = 0; a < size; ++a) {
    if (frame.is_leaf(a)) continue;
    const std::vector<World> succ = ordered_successors(frame, a);
    const std::size_t n = succ.size() - 1;
    const TheoryId parent{kit.heights[a] - 1};
    std::vector<IndexedC> siblings;
    std::vector<ArithFormula> negated;
    for (std::size_t i = 0; i < n; ++i) {
      const World b = succ[i];
      const TheoryId witness{kit.heights[b]};
      siblings.push_back(IndexedC{parent, i, n + 1, witness, false});
      kit.annotations[b] = siblings.back();
      kit.c_sentences[b] = least_proof_sentence(parent, i, n + 1, witness);
      negated.push_back(ArithFormula::negation(kit.c_sentences[b]));
    }
    const World last = succ.back();
    kit.annotations[last] = LastC{parent, kit.heights[a], siblings, false};
    ArithFormula c = box_n(kit.heights[a], falsity());
    for (const ArithFormula& neg : negated) c = ArithFormula::conj(c, neg);
    kit.c_sentences[last] = c;
  }

  kit.f_sentences.reserve(size);
  for (World a = 0; a < size; ++a) kit.f_sentences.push_back(f_sentence(kit, a, false));
  return kit;
}

EvaluationKit simplify_paper_form(const EvaluationKit& kit) {
  EvaluationKit out = kit;
  out.simplified = true;
  auto simplify_indexed = [](IndexedC& c) {
    if (c.witness_theory == c.parent_theory) c.witness_elided = true;
  };
  for (CAnnotation& a : out.annotations) {
    if (auto* c = std::get_if<IndexedC>(&a)) {
      simplify_indexed(*c);
    } else if (auto* last = std::get_if<LastC>(&a)) {
      bool all_elided = !last->siblings.empty();
      for (IndexedC& s : last->siblings) {
        simplify_indexed(s);
        all_elided = all_elided && s.witness_elided;
      }
      last->residue_form = all_elided;
    }
  }
  for (std::size_t w = 0; w < out.annotations.size(); ++w) {
    out.c_sentences[w] = annotation_sentence(out.annotations[w]);
  }
  for (World a = 0; a < out.f_sentences.size(); ++a) out.f_sentences[a] = f_sentence(out, a, true);
  return out;
}

ArithFormula evaluate_formula(const EvaluationKit& kit, const Formula& psi) {
  switch (psi.kind()) {
    case ModalKind::Top: return truth();
    case ModalKind::Bot: return falsity();
    case ModalKind::Var: {
      std::optional<ArithFormula> f;
      for (World a = 0; a < kit.f_sentences.size(); ++a) {
        if (!kit.model.holds(psi.name(), a)) continue;
        f = f ? ArithFormula::disj(*f, kit.f_sentences[a]) : kit.f_sentences[a];
      }
      return f ? *f : falsity();
    }
    case ModalKind::Not: return ArithFormula::negation(evaluate_formula(kit, psi.lhs()));
    case ModalKind::And:
      return ArithFormula::conj(evaluate_formula(kit, psi.lhs()), evaluate_formula(kit, psi.rhs()));
    case ModalKind::Or:
      return ArithFormula::disj(evaluate_formula(kit, psi.lhs()), evaluate_formula(kit, psi.rhs()));
    case ModalKind::Imp:
      return ArithFormula::imp(evaluate_formula(kit, psi.lhs()), evaluate_formula(kit, psi.rhs()));
    case ModalKind::Box: return box_n(1, evaluate_formula(kit, psi.lhs()));
    case ModalKind::Dia: return diamond_n(1, evaluate_formula(kit, psi.lhs()));
  }
  throw std::logic_error("unknown modal kind");
}

namespace {

nlohmann::json indexed_json(const IndexedC& c) {
  return {{"type", "indexed"},         {"parent_theory", c.parent_theory.k},
          {"residue", c.residue},      {"modulus", c.modulus},
          {"witness_theory", c.witness_theory.k}, {"witness_elided", c.witness_elided}};
}

nlohmann::json rendered(const ArithFormula& f) {
  return {{"ascii", print_arith(f)}, {"latex", print_arith(f, ArithFormat::Latex)}};
}

}  // namespace

nlohmann::json annotation_to_json(const CAnnotation& a) {
  if (std::holds_alternative<RootC>(a)) return {{"type", "root"}};
  if (const auto* c = std::get_if<IndexedC>(&a)) return indexed_json(*c);
  const auto& last = std::get<LastC>(a);
  nlohmann::json sib = nlohmann::json::array();
  for (const IndexedC& s : last.siblings) sib.push_back(indexed_json(s));
  return {{"type", "last"},
          {"parent_theory", last.parent_theory.k},
          {"box_level", last.box_level},
          {"siblings", sib},
          {"residue_form", last.residue_form}};
}

nlohmann::json kit_dossier(const EvaluationKit& kit, const Formula& phi) {
  nlohmann::json worlds = nlohmann::json::array();
  for (World a = 0; a < kit.f_sentences.size(); ++a) {
    nlohmann::json c = rendered(kit.c_sentences[a]);
    c["annotation"] = annotation_to_json(kit.annotations[a]);
    worlds.push_back({{"id", a}, {"height", kit.heights[a]}, {"C", c}, {"F", rendered(kit.f_sentences[a])}});
  }
  nlohmann::json f = nlohmann::json::object();
  for (const std::string& v : variables(phi)) f[v] = rendered(evaluate_formula(kit, Formula::var(v)));
  return {{"formula", print_modal(phi)},
          {"simplified", kit.simplified},
          {"model", model_to_json(kit.model)},
          {"worlds", worlds},
          {"f", f},
          {"evaluation", rendered(evaluate_formula(kit, phi))}};
}

std::string kit_latex(const EvaluationKit& kit, const Formula& phi) {
  std::string out = "\\begin{itemize}\n";
  for (World a = 0; a < kit.f_sentences.size(); ++a) {
    const std::string id = std::to_string(a);
    out += "\\item $h(" + id + ")=" + std::to_string(kit.heights[a]) + "$, $\\mathsf{C}_{" + id +
           "}=" + print_arith(kit.c_sentences[a], ArithFormat::Latex) + "$, $\\mathsf{F}_{" + id +
           "}=" + print_arith(kit.f_sentences[a], ArithFormat::Latex) + "$\n";
  }
  for (const std::string& v : variables(phi)) {
    out += "\\item $f(" + v + ")=" + print_arith(evaluate_formula(kit, Formula::var(v)), ArithFormat::Latex) +
           "$\n";
  }
  out += "\\item $f(" + print_modal(phi, ModalFormat::Latex) +
         ")=" + print_arith(evaluate_formula(kit, phi), ArithFormat::Latex) + "$\n";
  out += "\\end{itemize}\n";
  return out;
}

}  // namespace glkit
