#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glkit/modal.hpp"

namespace glkit {

using World = std::size_t;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite irreflexive transitive tree, stored as a parent array.
///
/// Worlds are 0..size()-1; exactly one world has no parent.  The strict order
/// is "proper ancestor of": a ≺ b iff a lies on the path from b to the root.
class TreeFrame {
 public:
  /// Throws ModelError unless the array describes a single rooted tree.
  static TreeFrame from_parents(std::vector<std::optional<World>> parents);

  std::size_t size() const { return parents_.size(); }
  World root() const { return root_; }
  std::optional<World> parent(World w) const;
  const std::vector<std::optional<World>>& parents() const { return parents_; }

  std::span<const World> children(World w) const;
  /// Every b with w ≺ b, in increasing id order.
  std::span<const World> descendants(World w) const;
  bool precedes(World a, World b) const;
  bool is_leaf(World w) const { return children(w).empty(); }

  /// Path root = c_0 ≺ ... ≺ c_k = w.
  std::vector<World> chain_to(World w) const;

  /// Heights of all worlds, indexed by id.
  const std::vector<std::size_t>& heights() const { return heights_; }

  friend bool operator==(const TreeFrame& a, const TreeFrame& b) { return a.parents_ == b.parents_; }

 private:
  void check(World w) const;

  std::vector<std::optional<World>> parents_;
  World root_ = 0;
  std::vector<std::vector<World>> children_;
  std::vector<std::vector<World>> descendants_;
  std::vector<std::size_t> heights_;
};

/// Frame plus valuation.  Variables absent from the valuation are false everywhere.
class TreeModel {
 public:
  TreeModel(TreeFrame frame, std::map<std::string, std::vector<World>> valuation);

  const TreeFrame& frame() const { return frame_; }
  const std::map<std::string, std::vector<World>>& valuation() const { return valuation_; }
  bool holds(const std::string& var, World w) const;

  friend bool operator==(const TreeModel& a, const TreeModel& b) {
    return a.frame_ == b.frame_ && a.valuation_ == b.valuation_;
  }

 private:
  TreeFrame frame_;
  std::map<std::string, std::vector<World>> valuation_;
};

/// sup({0} ∪ {h(b)+1 | a ≺ b}).
std::size_t height(const TreeFrame& frame, World a);

bool forces(const TreeModel& model, World a, const Formula& f);

/// Immediate successors ascending by id, except that the maximal-height
/// successor with the largest id is moved to the end.  Throws on a leaf.
std::vector<World> ordered_successors(const TreeFrame& frame, World a);

/// One frame per isomorphism class of rooted trees with 1..max_worlds worlds,
/// each in canonical form (parent[i] < i, root 0), ordered by size.
std::vector<TreeFrame> enumerate_frames(std::size_t max_worlds);

/// Valuation number `index` over `vars` on `frame`: bit (j * size + w) of
/// `index` says whether vars[j] holds at w.
TreeModel model_from_index(const TreeFrame& frame, const std::vector<std::string>& vars,
                           std::uint64_t index);

/// Every frame of enumerate_frames(max_worlds) crossed with every valuation of
/// `vars`, frames outermost and valuations in increasing index order.
class ModelStream {
 public:
  ModelStream(std::size_t max_worlds, std::vector<std::string> vars);

  std::optional<TreeModel> next();
  void reset();

 private:
  std::vector<TreeFrame> frames_;
  std::vector<std::string> vars_;
  std::size_t frame_ = 0;
  std::uint64_t index_ = 0;
};

nlohmann::json model_to_json(const TreeModel& model);
TreeModel model_from_json(const nlohmann::json& j);

}  // namespace glkit
