#include "guidyn/synth/generalization.hpp"

#include <regex>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/rng.hpp"
#include "guidyn/common/tags.hpp"
#include "guidyn/env/generator.hpp"
#include "guidyn/env/serialize.hpp"
#include "guidyn/synth/annotate.hpp"

namespace guidyn {

std::string to_string(GenLevel l) { return l == GenLevel::kL1 ? "L1" : "L2"; }
std::string to_string(GenTask t) { return t == GenTask::kForward ? "forward" : "inverse"; }

GenLevel gen_level_from_string(std::string_view s) {
  if (s == "L1") return GenLevel::kL1;
  if (s == "L2") return GenLevel::kL2;
  throw DataError("unknown generalization level: " + std::string(s));
}

GenTask gen_task_from_string(std::string_view s) {
  if (s == "forward") return GenTask::kForward;
  if (s == "inverse") return GenTask::kInverse;
  throw DataError("unknown generalization task: " + std::string(s));
}

namespace {

bool usable(const Edge& e) { return e.flag == EdgeFlag::kValid && e.from != e.to; }

SampleInput image(const std::string& role, const std::string& app, const std::string& state) {
  return {Modality::kImage, role, image_ref(app, state)};
}

SampleInput text(const std::string& role, const std::string& value) {
  return {Modality::kText, role, value};
}

}  // namespace

std::vector<GeneralizationItem> build_generalization_items(const EnvGraph& graph, GenLevel level,
                                                           GenTask task, std::size_t n,
                                                           std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> paths;  // edge indices
  const auto& edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!usable(edges[e])) continue;
    if (level == GenLevel::kL1) {
      paths.push_back({e});
      continue;
    }
    for (std::size_t f : graph.out_edges(edges[e].to)) {
      if (usable(edges[f])) paths.push_back({e, f});
    }
  }
  if (paths.size() < n) {
    throw DataError("graph " + graph.app_id() + " has " + std::to_string(paths.size()) + " " +
                    to_string(level) + " paths, " + std::to_string(n) + " requested");
  }
  Rng rng(seed);
  rng.shuffle(paths);
  paths.resize(n);

  std::vector<GeneralizationItem> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GeneralizationItem item;
    item.item_id = graph.app_id() + "/" + to_string(level) + "-" + to_string(task) + "/" +
                   std::to_string(i);
    item.level = level;
    item.task = task;
    item.app_id = graph.app_id();
    item.path.push_back(graph.state(edges[paths[i].front()].from).state_id);
    for (std::size_t e : paths[i]) {
      const Edge& edge = edges[e];
      item.actions.push_back(edge.action);
      item.action_descs.push_back(describe_action(graph.state(edge.from), edge.action, graph.dims()));
      item.path.push_back(graph.state(edge.to).state_id);
    }
    const std::string& start = item.path.front();
    const std::string& target = item.path.back();
    const UiState& target_state = graph.state(graph.index_of(target));
    if (task == GenTask::kForward) {
      item.reference = salient_texts(target_state.tree, 5);
      item.inputs.push_back(image("image_t", item.app_id, start));
      if (level == GenLevel::kL1) {
        item.inputs.push_back(text("action_desc_1", item.action_descs[0]));
        item.prompt = render_prompt("forward_l1", {{"action_description", item.action_descs[0]}});
      } else {
        item.inputs.push_back(text("action_desc_1", item.action_descs[0]));
        item.inputs.push_back(text("action_desc_2", item.action_descs[1]));
        item.prompt = render_prompt("forward_l2", {{"action_description_1", item.action_descs[0]},
                                                   {"action_description_2", item.action_descs[1]}});
      }
    } else {
      item.reference = {item.action_descs[0]};
      item.inputs.push_back(image("image_t", item.app_id, start));
      item.inputs.push_back(image(level == GenLevel::kL1 ? "image_t1" : "image_t2", item.app_id, target));
      item.prompt = render_prompt(level == GenLevel::kL1 ? "inverse_dynamics" : "inverse_l2", {});
    }
    items.push_back(std::move(item));
  }
  return items;
}

bool replay(const EnvGraph& graph, const GeneralizationItem& item) {
  if (item.path.size() != item.actions.size() + 1 || item.actions.empty()) return false;
  std::size_t at = graph.index_of(item.path.front());
  for (std::size_t i = 0; i < item.actions.size(); ++i) {
    const StepOutcome o = step(graph, at, item.actions[i]);
    if (o.flag != EdgeFlag::kValid) return false;
    at = o.next_state;
    if (graph.state(at).state_id != item.path[i + 1]) return false;
  }
  return true;
}

Json item_to_json(const GeneralizationItem& item) {
  Json j;
  j["item_id"] = item.item_id;
  j["level"] = to_string(item.level);
  j["task"] = to_string(item.task);
  j["app_id"] = item.app_id;
  j["path"] = item.path;
  Json actions = Json::array();
  for (const auto& a : item.actions) actions.push_back(action_to_json(a));
  j["actions"] = std::move(actions);
  j["action_descs"] = item.action_descs;
  j["prompt"] = {{"system", item.prompt.system}, {"user", item.prompt.user}};
  Json inputs = Json::array();
  for (const auto& in : item.inputs) {
    inputs.push_back({{"modality", in.modality == Modality::kImage ? "image" : "text"},
                      {"role", in.role},
                      {"value", in.value}});
  }
  j["inputs"] = std::move(inputs);
  j["reference"] = item.reference;
  return j;
}

GeneralizationItem item_from_json(const Json& j) {
  try {
    GeneralizationItem item;
    item.item_id = j.at("item_id").get<std::string>();
    item.level = gen_level_from_string(j.at("level").get<std::string>());
    item.task = gen_task_from_string(j.at("task").get<std::string>());
    item.app_id = j.at("app_id").get<std::string>();
    item.path = j.at("path").get<std::vector<std::string>>();
    for (const auto& a : j.at("actions")) item.actions.push_back(action_from_json(a));
    item.action_descs = j.at("action_descs").get<std::vector<std::string>>();
    item.prompt.system = j.at("prompt").at("system").get<std::string>();
    item.prompt.user = j.at("prompt").at("user").get<std::string>();
    for (const auto& in : j.at("inputs")) {
      item.inputs.push_back({in.at("modality") == "image" ? Modality::kImage : Modality::kText,
                             in.at("role").get<std::string>(), in.at("value").get<std::string>()});
    }
    item.reference = j.at("reference").get<std::vector<std::string>>();
    return item;
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad generalization item: ") + e.what());
  }
}

JudgeVerdict parse_judge_verdict(std::string_view text, JudgeTask task) {
  const auto reason = single_tag(text, "reason");
  const auto score = single_tag(text, "score");
  if (!reason) throw DataError("judge output needs exactly one <reason> element");
  if (!score) throw DataError("judge output needs exactly one <score> element");
  const std::string s = trim(*score);
  // Exact decimal forms only, so 0.60 is 0.6 but 0.6000001 is rejected.
  static const std::regex forward(R"(^(?:(0|1)(?:\.0*)?|0\.([2468])0*)$)");
  static const std::regex inverse(R"(^(0|1)(?:\.0*)?$)");
  std::smatch m;
  const std::regex& rule = task == JudgeTask::kForward ? forward : inverse;
  if (!std::regex_match(s, m, rule)) {
    throw DataError("judge score '" + s + "' is outside the " +
                    (task == JudgeTask::kForward ? "forward" : "inverse") + " score set");
  }
  double value;
  if (m[1].matched) {
    value = m[1].str() == "1" ? 1.0 : 0.0;
  } else {
    value = (m[2].str()[0] - '0') / 10.0;
  }
  return {trim(*reason), value};
}

}  // namespace guidyn
