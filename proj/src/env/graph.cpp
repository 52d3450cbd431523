#include "guidyn/env/graph.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/hash.hpp"
#include "guidyn/env/coords.hpp"
#include "guidyn/env/render.hpp"

namespace guidyn {

namespace {

constexpr std::array<const char*, 16> kInputVocabulary = {
    "coffee beans",  "running shoes", "hello",       "weekend trip", "green tea",
    "birthday gift", "wireless mouse", "order status", "hotpot",      "city map",
    "yoga mat",      "phone case",    "fresh fruit",  "movie tickets", "desk lamp",
    "noodles"};

void validate_state(const UiState& s, ScreenDims dims) {
  std::set<std::string> xpaths;
  std::set<std::string> ids;
  for (const auto& n : s.tree) {
    const Rect& b = n.bounds;
    if (b.x < 0 || b.y < 0 || b.w < 0 || b.h < 0 || b.x + b.w > dims.width ||
        b.y + b.h > dims.height) {
      throw DataError("node " + n.node_id + " of " + s.state_id + " lies outside the screen");
    }
    if (!xpaths.insert(n.xpath).second) {
      throw DataError("duplicate xpath " + n.xpath + " in " + s.state_id);
    }
    if (!ids.insert(n.node_id).second) {
      throw DataError("duplicate node id " + n.node_id + " in " + s.state_id);
    }
  }
}

}  // namespace

EnvGraph::EnvGraph(std::string app_id, ScreenDims dims, std::vector<UiState> states,
                   std::vector<Edge> edges, std::size_t entry, std::vector<std::size_t> terminals)
    : app_id_(std::move(app_id)),
      dims_(dims),
      states_(std::move(states)),
      edges_(std::move(edges)),
      entry_(entry),
      terminals_(std::move(terminals)) {
  if (states_.empty()) throw DataError("graph " + app_id_ + " has no states");
  if (entry_ >= states_.size()) throw DataError("graph " + app_id_ + " has no entry state");
  std::sort(terminals_.begin(), terminals_.end());
  terminals_.erase(std::unique(terminals_.begin(), terminals_.end()), terminals_.end());

  for (std::size_t i = 0; i < states_.size(); ++i) {
    UiState& s = states_[i];
    validate_state(s, dims_);
    if (s.raster.empty()) s.raster = render(s.template_id, s.tree, dims_);
    if (s.raster.width != dims_.width || s.raster.height != dims_.height) {
      throw DataError("raster of " + s.state_id + " does not match the screen dimensions");
    }
    if (!by_id_.emplace(s.state_id, i).second) {
      throw DataError("duplicate state id " + s.state_id);
    }
  }

  out_.resize(states_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.from >= states_.size() || edge.to >= states_.size()) {
      throw DataError("edge references a missing state in " + app_id_);
    }
    if (states_[edge.from].find_node(edge.target_node) == nullptr) {
      throw DataError("edge target node " + edge.target_node + " missing from " +
                      states_[edge.from].state_id);
    }
    if (edge.flag == EdgeFlag::kNoOp) throw DataError("edges cannot be flagged no_op");
    out_[edge.from].push_back(e);
  }
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (out_[i].empty() && !is_terminal(i)) {
      throw DataError("non-terminal state " + states_[i].state_id + " has no outgoing edge");
    }
  }
}

bool EnvGraph::is_terminal(std::size_t state) const {
  return std::binary_search(terminals_.begin(), terminals_.end(), state);
}

std::size_t EnvGraph::index_of(const std::string& state_id) const {
  auto found = find(state_id);
  if (!found) throw DataError("unknown state " + state_id + " in " + app_id_);
  return *found;
}

std::optional<std::size_t> EnvGraph::find(const std::string& state_id) const {
  auto it = by_id_.find(state_id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

StepOutcome step(const EnvGraph& graph, std::size_t state, const Action& action) {
  if (state >= graph.states().size()) throw DataError("unknown state index");
  StepOutcome inert{state, EdgeFlag::kNoOp, std::nullopt};
  if (!action.has_point()) return inert;
  if (!coordinates_in_range(action, graph.dims())) return inert;

  const Action abs = to_absolute_space(action, graph.dims());
  const UiState& from = graph.state(state);
  for (std::size_t e : graph.out_edges(state)) {
    const Edge& edge = graph.edges()[e];
    if (edge.action.kind() != abs.kind()) continue;
    const AxNode* node = from.find_node(edge.target_node);
    if (node == nullptr || !node->bounds.contains(abs.point())) continue;
    if (abs.kind() == ActionKind::kInput && abs.text() != edge.action.text()) continue;
    if (abs.kind() == ActionKind::kScroll && abs.direction() != edge.action.direction()) continue;
    return {edge.to, edge.flag, e};
  }
  return inert;
}

StepOutcome step(const EnvGraph& graph, const std::string& state_id, const Action& action) {
  return step(graph, graph.index_of(state_id), action);
}

std::string seeded_input_text(const UiState& state, const AxNode& node) {
  const std::uint64_t h = hash_parts({"input", state.state_id, node.node_id});
  return kInputVocabulary[h % kInputVocabulary.size()];
}

std::vector<Action> enumerate_affordances(const UiState& state) {
  std::vector<Action> out;
  for (const auto& node : state.tree) {
    const Point c = node.bounds.center();
    if (node.events.has(EventKind::kClickable)) out.push_back(Action::click(c));
    if (node.events.has(EventKind::kEditable)) {
      out.push_back(Action::input(c, seeded_input_text(state, node)));
    }
    if (node.events.has(EventKind::kScrollable)) {
      for (Direction d : {Direction::kUp, Direction::kDown, Direction::kLeft, Direction::kRight}) {
        out.push_back(Action::scroll(c, d));
      }
    }
  }
  return out;
}

const AxNode* node_at(const UiState& state, Point p, EventKind event) {
  const AxNode* hit = nullptr;
  for (const auto& node : state.tree) {
    if (node.events.has(event) && node.bounds.contains(p)) hit = &node;
  }
  return hit;
}

}  // namespace guidyn
