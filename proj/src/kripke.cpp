#include "glkit/kripke.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace glkit {

TreeFrame TreeFrame::from_parents(std::vector<std::optional<World>> parents) {
  TreeFrame f;
  const std::size_t n = parents.size();
  if (n == 0) throw ModelError("frame has no worlds");
  std::size_t roots = 0;
  for (World w = 0; w < n; ++w) {
    if (!parents[w]) {
      ++roots;
      f.root_ = w;
    } else if (*parents[w] >= n) {
      throw ModelError("parent of world " + std::to_string(w) + " is out of range");
    }
  }
  if (roots != 1) throw ModelError("frame must have exactly one root");

  // Every world must reach the root in fewer than n steps.
  for (World w = 0; w < n; ++w) {
    World cur = w;
    std::size_t steps = 0;
    while (parents[cur]) {
      cur = *parents[cur];
      if (++steps > n) throw ModelError("parent relation has a cycle");
    }
  }

  f.parents_ = std::move(parents);
  f.children_.assign(n, {});
  f.descendants_.assign(n, {});
  for (World w = 0; w < n; ++w) {
    if (f.parents_[w]) f.children_[*f.parents_[w]].push_back(w);
    for (auto p = f.parents_[w]; p; p = f.parents_[*p]) f.descendants_[*p].push_back(w);
  }
  for (auto& d : f.descendants_) std::sort(d.begin(), d.end());

  // Heights: a world's height is fixed once all descendants are done; process by
  // decreasing depth.
  std::vector<std::size_t> depth(n, 0);
  for (World w = 0; w < n; ++w) {
    for (auto p = f.parents_[w]; p; p = f.parents_[*p]) ++depth[w];
  }
  std::vector<World> order(n);
  for (World w = 0; w < n; ++w) order[w] = w;
  std::sort(order.begin(), order.end(), [&](World a, World b) { return depth[a] > depth[b]; });
  f.heights_.assign(n, 0);
  for (World w : order) {
    for (World c : f.children_[w]) f.heights_[w] = std::max(f.heights_[w], f.heights_[c] + 1);
  }
  return f;
}

void TreeFrame::check(World w) const {
  if (w >= size()) throw ModelError("unknown world " + std::to_string(w));
}

std::optional<World> TreeFrame::parent(World w) const {
  check(w);
  return parents_[w];
}

std::span<const World> TreeFrame::children(World w) const {
  check(w);
  return children_[w];
}

std::span<const World> TreeFrame::descendants(World w) const {
  check(w);
  return descendants_[w];
}

bool TreeFrame::precedes(World a, World b) const {
  check(a);
  check(b);
  for (auto p = parents_[b]; p; p = parents_[*p]) {
    if (*p == a) return true;
  }
  return false;
}

std::vector<World> TreeFrame::chain_to(World w) const {
  check(w);
  std::vector<World> chain{w};
  for (auto p = parents_[w]; p; p = parents_[*p]) chain.push_back(*p);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

TreeModel::TreeModel(TreeFrame frame, std::map<std::string, std::vector<World>> valuation)
    : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (auto& [name, worlds] : valuation_) {
    std::sort(worlds.begin(), worlds.end());
    worlds.erase(std::unique(worlds.begin(), worlds.end()), worlds.end());
    for (World w : worlds) {
      if (w >= frame_.size()) {
        throw ModelError("valuation of '" + name + "' mentions unknown world " + std::to_string(w));
      }
    }
  }
}

bool TreeModel::holds(const std::string& var, World w) const {
  auto it = valuation_.find(var);
  if (it == valuation_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), w);
}

std::size_t height(const TreeFrame& frame, World a) {
  if (a >= frame.size()) throw ModelError("unknown world " + std::to_string(a));
  return frame.heights()[a];
}

bool forces(const TreeModel& model, World a, const Formula& f) {
  const TreeFrame& frame = model.frame();
  if (a >= frame.size()) throw ModelError("unknown world " + std::to_string(a));
  switch (f.kind()) {
    case ModalKind::Top: return true;
    case ModalKind::Bot: return false;
    case ModalKind::Var: return model.holds(f.name(), a);
    case ModalKind::Not: return !forces(model, a, f.lhs());
    case ModalKind::And: return forces(model, a, f.lhs()) && forces(model, a, f.rhs());
    case ModalKind::Or: return forces(model, a, f.lhs()) || forces(model, a, f.rhs());
    case ModalKind::Imp: return !forces(model, a, f.lhs()) || forces(model, a, f.rhs());
    case ModalKind::Box:
      for (World b : frame.descendants(a)) {
        if (!forces(model, b, f.lhs())) return false;
      }
      return true;
    case ModalKind::Dia:
      for (World b : frame.descendants(a)) {
        if (forces(model, b, f.lhs())) return true;
      }
      return false;
  }
  return false;
}

std::vector<World> ordered_successors(const TreeFrame& frame, World a) {
  auto kids = frame.children(a);
  if (kids.empty()) throw ModelError("world " + std::to_string(a) + " is a leaf");
  std::vector<World> out(kids.begin(), kids.end());
  std::sort(out.begin(), out.end());
  const auto& h = frame.heights();
  auto last = out.begin();
  for (auto it = out.begin(); it != out.end(); ++it) {
    if (h[*it] >= h[*last]) last = it;
  }
  const World chosen = *last;
  out.erase(last);
  out.push_back(chosen);
  return out;
}

namespace {

std::string canonical_code(const std::vector<std::vector<World>>& children, World w) {
  std::vector<std::string> parts;
  for (World c : children[w]) parts.push_back(canonical_code(children, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ')';
  return out;
}

// Odometer over parent[i] in 0..i-1.
bool advance_parents(std::vector<World>& parent) {
  for (World i = parent.size(); i-- > 1;) {
    if (parent[i] + 1 < i) {
      ++parent[i];
      return true;
    }
    parent[i] = 0;
  }
  return false;
}

}  // namespace

std::vector<TreeFrame> enumerate_frames(std::size_t max_worlds) {
  std::vector<TreeFrame> out;
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    std::set<std::string> seen;
    std::vector<World> parent(n, 0);
    while (true) {
      std::vector<std::vector<World>> children(n);
      for (World i = 1; i < n; ++i) children[parent[i]].push_back(i);
      if (seen.insert(canonical_code(children, 0)).second) {
        std::vector<std::optional<World>> ps(n);
        for (World i = 1; i < n; ++i) ps[i] = parent[i];
        out.push_back(TreeFrame::from_parents(std::move(ps)));
      }
      if (!advance_parents(parent)) break;
    }
  }
  return out;
}

TreeModel model_from_index(const TreeFrame& frame, const std::vector<std::string>& vars,
                           std::uint64_t index) {
  std::map<std::string, std::vector<World>> val;
  const std::size_t n = frame.size();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    auto& worlds = val[vars[j]];
    for (World w = 0; w < n; ++w) {
      if ((index >> (j * n + w)) & 1U) worlds.push_back(w);
    }
  }
  return TreeModel(frame, std::move(val));
}

ModelStream::ModelStream(std::size_t max_worlds, std::vector<std::string> vars)
    : frames_(enumerate_frames(max_worlds)), vars_(std::move(vars)) {}

std::optional<TreeModel> ModelStream::next() {
  while (frame_ < frames_.size()) {
    const std::size_t bits = vars_.size() * frames_[frame_].size();
    if (bits >= 64) throw ModelError("too many valuations to enumerate");
    if (index_ < (std::uint64_t{1} << bits)) {
      return model_from_index(frames_[frame_], vars_, index_++);
    }
    ++frame_;
    index_ = 0;
  }
  return std::nullopt;
}

void ModelStream::reset() {
  frame_ = 0;
  index_ = 0;
}

nlohmann::json model_to_json(const TreeModel& model) {
  nlohmann::json parents = nlohmann::json::array();
  for (const auto& p : model.frame().parents()) {
    parents.push_back(p ? nlohmann::json(*p) : nlohmann::json(nullptr));
  }
  nlohmann::json val = nlohmann::json::object();
  for (const auto& [name, worlds] : model.valuation()) val[name] = worlds;
  return {{"parents", parents}, {"valuation", val}};
}

TreeModel model_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::optional<World>> parents;
    for (const auto& p : j.at("parents")) {
      if (p.is_null()) {
        parents.emplace_back(std::nullopt);
      } else {
        parents.emplace_back(p.get<World>());
      }
    }
    std::map<std::string, std::vector<World>> val;
    if (j.contains("valuation")) {
      for (const auto& [name, worlds] : j.at("valuation").items()) {
        Formula::var(name);  // validates the identifier
        val[name] = worlds.get<std::vector<World>>();
      }
    }
    return TreeModel(TreeFrame::from_parents(std::move(parents)), std::move(val));
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace glkit
