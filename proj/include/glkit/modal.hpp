#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace glkit {

/// Raised by the parsers in this library; `position()` is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class ModalKind { Top, Bot, Var, Not, And, Or, Imp, Box, Dia };

enum class ModalFormat { Ascii, Unicode, Latex };

/// Immutable syntax tree of the GL language.  Copies share structure.
///
/// Equality and ordering are structural; the ordering is only used for
/// deduplication and carries no logical meaning.
class Formula {
 public:
  static Formula top();
  static Formula bot();
  static Formula var(std::string name);
  static Formula negation(Formula sub);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula imp(Formula lhs, Formula rhs);
  static Formula box(Formula sub);
  static Formula dia(Formula sub);

  ModalKind kind() const;
  /// Variable name; empty for every other kind.
  const std::string& name() const;
  /// Operand of unary connectives, left operand of binary ones.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_atomic() const;
  bool is_unary() const;
  bool is_binary() const;

  /// Node count.
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }
  friend int compare(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(ModalKind kind, std::string name, const Formula* lhs, const Formula* rhs);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  ModalKind kind;
  std::string name;
  std::vector<Formula> children;
  std::size_t size;
};

inline ModalKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline std::size_t Formula::size() const { return node_->size; }

Formula parse_modal(std::string_view text);

std::string print_modal(const Formula& f, ModalFormat format = ModalFormat::Ascii);

/// All subtrees of `f`, including `f`, structurally deduplicated and sorted.
std::vector<Formula> subformulas(const Formula& f);

/// Variable names occurring in `f`, sorted and deduplicated.
std::vector<std::string> variables(const Formula& f);

/// Rewrites every `<>A` into `~[]~A`.
Formula normalize_dia(const Formula& f);

/// Number of connectives (every non-variable node, constants included).
std::size_t connective_count(const Formula& f);

/// Calls `visit` once for every formula over `vars` with at most
/// `max_connectives` connectives, ordered by connective count.  Formulas are
/// pairwise structurally distinct.  Only the formulas below the top level are
/// kept in memory.
void for_each_formula(std::size_t max_connectives, const std::vector<std::string>& vars,
                      const std::function<void(const Formula&)>& visit);

/// Number of formulas for_each_formula would visit.
std::uint64_t count_formulas(std::size_t max_connectives, std::size_t var_count);

}  // namespace glkit
