#pragma once

#include <string>
#include <vector>

#include "guidyn/env/serialize.hpp"

namespace guidyn {

// One recorded (pre, action, post) step with its provenance.
struct Transition {
  std::string transition_id;  // "<app_id>/w<worker>/t<step>", globally unique
  std::string app_id;
  int worker_id = 0;
  int step_index = 0;
  std::string pre;
  Action action = Action::wait();
  std::string post;
  EdgeFlag edge_flag = EdgeFlag::kNoOp;
  int source_priority = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

std::string make_transition_id(const std::string& app_id, int worker_id, int step_index);

// Fixed key order: transition_id, app_id, worker_id, step_index, pre, action, post,
// edge_flag, source_priority.
Json transition_to_json(const Transition& t);
Transition transition_from_json(const Json& j);

std::vector<std::string> transitions_to_lines(const std::vector<Transition>& ts);
std::vector<Transition> transitions_from_lines(const std::vector<std::string>& lines);

// Resolved pre/post states. Throws DataError when the ids do not resolve.
struct ResolvedTransition {
  const EnvGraph* graph;
  const UiState* pre;
  const UiState* post;
};
ResolvedTransition resolve(const Transition& t, const GraphSet& graphs);

}  // namespace guidyn
