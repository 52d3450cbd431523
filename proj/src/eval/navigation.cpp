#include "guidyn/eval/navigation.hpp"

#include "guidyn/common/errors.hpp"
#include "guidyn/common/hash.hpp"
#include "guidyn/common/rng.hpp"
#include "guidyn/env/coords.hpp"
#include "guidyn/synth/annotate.hpp"

namespace guidyn {

std::vector<NavItem> build_navigation_items(const std::vector<EnvGraph>& graphs,
                                            std::size_t per_app, CoordSpace space,
                                            std::uint64_t seed) {
  std::vector<NavItem> items;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const EnvGraph& g = graphs[gi];
    std::vector<std::size_t> usable;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const Edge& edge = g.edges()[e];
      if (edge.flag == EdgeFlag::kValid && edge.from != edge.to) usable.push_back(e);
    }
    if (usable.size() < per_app) {
      throw DataError("graph " + g.app_id() + " has only " + std::to_string(usable.size()) +
                      " usable edges for " + std::to_string(per_app) + " navigation items");
    }
    Rng rng(derive_seed(seed, gi));
    rng.shuffle(usable);
    usable.resize(per_app);
    for (std::size_t k = 0; k < usable.size(); ++k) {
      const Edge& edge = g.edges()[usable[k]];
      const UiState& s = g.state(edge.from);
      const AxNode* node = s.find_node(edge.target_node);
      if (node == nullptr) throw DataError("edge target node missing in " + s.state_id);
      NavItem item;
      item.item_id = g.app_id() + "/nav/" + std::to_string(k);
      item.app_id = g.app_id();
      item.state_id = s.state_id;
      item.image = image_ref(g.app_id(), s.state_id);
      item.instruction = describe_action(s, edge.action, g.dims());
      item.gt_action = convert_coords(edge.action, edge.action.space(), space, g.dims());
      item.gt_bounds = node->bounds;
      item.coord_space = space;
      item.dims = g.dims();
      item.prompt = render_prompt("navigation", {{"instruction", item.instruction}, {"history", "None"}});
      items.push_back(std::move(item));
    }
  }
  return items;
}

Json nav_item_to_json(const NavItem& item) {
  Json j;
  j["item_id"] = item.item_id;
  j["app_id"] = item.app_id;
  j["state_id"] = item.state_id;
  j["image"] = item.image;
  j["instruction"] = item.instruction;
  j["gt_action"] = action_to_json(item.gt_action);
  j["gt_bounds"] = {item.gt_bounds.x, item.gt_bounds.y, item.gt_bounds.w, item.gt_bounds.h};
  j["coord_space"] = to_string(item.coord_space);
  j["screen"] = {item.dims.width, item.dims.height};
  j["prompt"] = {{"system", item.prompt.system}, {"user", item.prompt.user}};
  return j;
}

NavItem nav_item_from_json(const Json& j) {
  try {
    NavItem item;
    item.item_id = j.at("item_id").get<std::string>();
    item.app_id = j.at("app_id").get<std::string>();
    item.state_id = j.at("state_id").get<std::string>();
    item.image = j.at("image").get<std::string>();
    item.instruction = j.at("instruction").get<std::string>();
    item.gt_action = action_from_json(j.at("gt_action"));
    const auto b = j.at("gt_bounds").get<std::vector<int>>();
    if (b.size() != 4) throw DataError("gt_bounds needs four integers");
    item.gt_bounds = {b[0], b[1], b[2], b[3]};
    const auto space = coord_space_from_string(j.at("coord_space").get<std::string>());
    if (!space) throw DataError("unknown coord_space in item " + item.item_id);
    item.coord_space = *space;
    const auto screen = j.at("screen").get<std::vector<int>>();
    if (screen.size() != 2) throw DataError("screen needs width and height");
    item.dims = {screen[0], screen[1]};
    item.prompt.system = j.at("prompt").at("system").get<std::string>();
    item.prompt.user = j.at("prompt").at("user").get<std::string>();
    return item;
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad navigation item: ") + e.what());
  }
}

std::string baseline_prediction(const NavItem& item, const GraphSet& graphs, std::uint64_t seed) {
  const EnvGraph& g = graphs.at(item.app_id);
  const UiState& s = g.state(g.index_of(item.state_id));
  const auto candidates = enumerate_affordances(s);
  if (candidates.empty()) return "<think>No interactive element.</think><sub_goal>Wait</sub_goal><answer>wait</answer>";
  Rng rng(hash_combine(seed, fnv1a64(item.item_id)));
  const Action& pick = rng.pick(candidates);
  const Action out = convert_coords(pick, pick.space(), item.coord_space, g.dims());
  return "<think>Choose one interactive element on the current screen.</think><sub_goal>" +
         describe_action(s, pick, g.dims()) + "</sub_goal><answer>" + format_action(out) +
         "</answer>";
}

EvalRecord make_record(const NavItem& item, std::string prediction_text) {
  EvalRecord r;
  r.item_id = item.item_id;
  r.gt_action = item.gt_action;
  r.gt_target_bounds = item.gt_bounds;
  r.gt_state = item.state_id;
  r.prediction_text = std::move(prediction_text);
  r.coord_space = item.coord_space;
  r.dims = item.dims;
  return r;
}

}  // namespace guidyn
