#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "guidyn/env/action.hpp"
#include "guidyn/env/types.hpp"

namespace guidyn {

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string target_node;  // node in `from`'s tree the action acts on
  Action action = Action::wait();  // canonical affordance, absolute coordinates
  EdgeFlag flag = EdgeFlag::kValid;
};

struct StepOutcome {
  std::size_t next_state = 0;
  EdgeFlag flag = EdgeFlag::kNoOp;  // kNoOp means no edge matched; next_state is unchanged
  std::optional<std::size_t> edge;  // index into EnvGraph::edges() when matched

  bool is_no_op() const noexcept { return flag == EdgeFlag::kNoOp; }
};

// Directed state-transition graph for one synthetic app. Immutable once built.
class EnvGraph {
 public:
  EnvGraph(std::string app_id, ScreenDims dims, std::vector<UiState> states,
           std::vector<Edge> edges, std::size_t entry, std::vector<std::size_t> terminals);

  const std::string& app_id() const noexcept { return app_id_; }
  ScreenDims dims() const noexcept { return dims_; }
  const std::vector<UiState>& states() const noexcept { return states_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t entry() const noexcept { return entry_; }
  const std::vector<std::size_t>& terminals() const noexcept { return terminals_; }

  bool is_terminal(std::size_t state) const;
  const UiState& state(std::size_t index) const { return states_.at(index); }
  // Throws DataError for an unknown id.
  std::size_t index_of(const std::string& state_id) const;
  std::optional<std::size_t> find(const std::string& state_id) const;
  const std::vector<std::size_t>& out_edges(std::size_t state) const { return out_.at(state); }

 private:
  std::string app_id_;
  ScreenDims dims_;
  std::vector<UiState> states_;
  std::vector<Edge> edges_;
  std::size_t entry_;
  std::vector<std::size_t> terminals_;
  std::vector<std::vector<std::size_t>> out_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

// Executes `action` at `state`. Point actions match an edge when the point falls inside
// the edge's target-node bounds and kind, input text and scroll direction agree; anything
// else is an inert self-loop. Normalized coordinates are converted first.
StepOutcome step(const EnvGraph& graph, std::size_t state, const Action& action);
StepOutcome step(const EnvGraph& graph, const std::string& state_id, const Action& action);

// One candidate per (node, event) in document order: click at the node center for
// clickable, input at the center with a state-seeded text for editable, and one scroll
// per direction (up, down, left, right) for scrollable.
std::vector<Action> enumerate_affordances(const UiState& state);

// The text the exploration policy types into `node` on `state`.
std::string seeded_input_text(const UiState& state, const AxNode& node);

// Resolves the tree node an action at `p` on `state` lands on, preferring the deepest
// (last in document order) node that supports `event`.
const AxNode* node_at(const UiState& state, Point p, EventKind event);

}  // namespace guidyn
