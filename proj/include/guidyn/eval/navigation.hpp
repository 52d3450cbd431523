#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guidyn/eval/harness.hpp"
#include "guidyn/prompts/prompts.hpp"

namespace guidyn {

// One navigation step: the screenshot and instruction u_t, with ground-truth action a_t.
struct NavItem {
  std::string item_id;
  std::string app_id;
  std::string state_id;
  std::string image;  // relative screenshot path
  std::string instruction;
  Action gt_action = Action::wait();  // in coord_space
  Rect gt_bounds;                     // absolute pixels
  CoordSpace coord_space = CoordSpace::kAbsolute;
  ScreenDims dims;
  PromptMessages prompt;

  friend bool operator==(const NavItem& a, const NavItem& b) {
    return a.item_id == b.item_id && a.app_id == b.app_id && a.state_id == b.state_id &&
           a.image == b.image && a.instruction == b.instruction && a.gt_action == b.gt_action &&
           a.gt_bounds == b.gt_bounds && a.coord_space == b.coord_space && a.dims == b.dims &&
           a.prompt.system == b.prompt.system && a.prompt.user == b.prompt.user;
  }
};

// Up to `per_app` items per graph from valid state-changing edges, seeded sampling without
// replacement. Throws DataError when a graph has fewer usable edges.
std::vector<NavItem> build_navigation_items(const std::vector<EnvGraph>& graphs,
                                            std::size_t per_app, CoordSpace space,
                                            std::uint64_t seed);

Json nav_item_to_json(const NavItem& item);
NavItem nav_item_from_json(const Json& j);

// Reference predictor: a seeded uniformly random affordance of the item's state, written in
// the tag grammar.
std::string baseline_prediction(const NavItem& item, const GraphSet& graphs, std::uint64_t seed);

EvalRecord make_record(const NavItem& item, std::string prediction_text);

}  // namespace guidyn
