#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "glkit/arith.hpp"
#include "glkit/kripke.hpp"

namespace glkit {

/// C_r = 0=0.
struct RootC {
  friend bool operator==(const RootC&, const RootC&) = default;
};

/// C_{b_i} for i < n: the least proof x of 0=1 in the parent theory has
/// log*(x) ≡ residue (mod modulus), and some proof below exp(exp(x)) exists
/// in the witness theory.  The last conjunct is omitted when `witness_elided`.
struct IndexedC {
  TheoryId parent_theory;
  std::size_t residue = 0;
  std::size_t modulus = 1;
  TheoryId witness_theory;
  bool witness_elided = false;
  friend bool operator==(const IndexedC&, const IndexedC&) = default;
};

/// C_{b_n}: box^box_level(0=1) together with the negations of the sibling
/// sentences.  With `residue_form` the sentence states instead that the least
/// proof in the parent theory has residue n modulo n+1.
struct LastC {
  TheoryId parent_theory;
  std::size_t box_level = 0;
  std::vector<IndexedC> siblings;
  bool residue_form = false;
  friend bool operator==(const LastC&, const LastC&) = default;
};

using CAnnotation = std::variant<RootC, IndexedC, LastC>;

/// Syntax denoted by an annotation.
ArithFormula annotation_sentence(const CAnnotation& a);

struct EvaluationKit {
  TreeModel model;
  std::vector<std::size_t> heights;
  std::vector<ArithFormula> c_sentences;
  std::vector<CAnnotation> annotations;
  std::vector<ArithFormula> f_sentences;  // F_a
  bool simplified = false;
};

/// Sentences C_a and F_a for every world; worlds are indexed by id.
EvaluationKit build_kit(const TreeModel& model);

/// f(ψ): variables go to the disjunction of F_a over the worlds forcing them,
/// boxes to provability of the quoted evaluation, <>χ to ~f([]~χ).
ArithFormula evaluate_formula(const EvaluationKit& kit, const Formula& psi);

/// Drops redundant witness conjuncts, puts C_{b_n} into residue form when
/// every sibling lost its witness, and removes 0=0 conjuncts from the F_a.
EvaluationKit simplify_paper_form(const EvaluationKit& kit);

nlohmann::json annotation_to_json(const CAnnotation& a);

/// Heights, C, F per world and f for each variable of `phi`.
nlohmann::json kit_dossier(const EvaluationKit& kit, const Formula& phi);
std::string kit_latex(const EvaluationKit& kit, const Formula& phi);

}  // namespace glkit
