#include "guidyn/explore/transition.hpp"

#include <fmt/format.h>

#include "guidyn/common/errors.hpp"

namespace guidyn {

std::string make_transition_id(const std::string& app_id, int worker_id, int step_index) {
  return fmt::format("{}/w{:04}/t{:06}", app_id, worker_id, step_index);
}

Json transition_to_json(const Transition& t) {
  Json j;
  j["transition_id"] = t.transition_id;
  j["app_id"] = t.app_id;
  j["worker_id"] = t.worker_id;
  j["step_index"] = t.step_index;
  j["pre"] = t.pre;
  j["action"] = action_to_json(t.action);
  j["post"] = t.post;
  j["edge_flag"] = to_string(t.edge_flag);
  j["source_priority"] = t.source_priority;
  return j;
}

Transition transition_from_json(const Json& j) {
  try {
    Transition t;
    t.transition_id = j.at("transition_id").get<std::string>();
    t.app_id = j.at("app_id").get<std::string>();
    t.worker_id = j.at("worker_id").get<int>();
    t.step_index = j.at("step_index").get<int>();
    t.pre = j.at("pre").get<std::string>();
    t.action = action_from_json(j.at("action"));
    t.post = j.at("post").get<std::string>();
    t.edge_flag = edge_flag_from_string(j.at("edge_flag").get<std::string>());
    t.source_priority = j.at("source_priority").get<int>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed transition record: ") + e.what());
  }
}

std::vector<std::string> transitions_to_lines(const std::vector<Transition>& ts) {
  std::vector<std::string> lines;
  lines.reserve(ts.size());
  for (const auto& t : ts) lines.push_back(transition_to_json(t).dump());
  return lines;
}

std::vector<Transition> transitions_from_lines(const std::vector<std::string>& lines) {
  std::vector<Transition> ts;
  ts.reserve(lines.size());
  for (const auto& line : lines) {
    try {
      ts.push_back(transition_from_json(Json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("malformed transition line: ") + e.what());
    }
  }
  return ts;
}

ResolvedTransition resolve(const Transition& t, const GraphSet& graphs) {
  const EnvGraph& g = graphs.at(t.app_id);
  return {&g, &g.state(g.index_of(t.pre)), &g.state(g.index_of(t.post))};
}

}  // namespace guidyn
