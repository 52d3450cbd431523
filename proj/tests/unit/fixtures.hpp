#pragma once

#include <string>
#include <vector>

#include "guidyn/env/generator.hpp"
#include "guidyn/env/graph.hpp"
#include "guidyn/env/render.hpp"

namespace guidyn::testing {

inline AxNode make_node(std::string id, std::string tag, std::string xpath, std::string text,
                        Rect bounds, EventSet events = {}) {
  return AxNode{std::move(id), std::move(tag), std::move(xpath), std::move(text), bounds, events};
}

inline EventSet clickable() { return EventSet().with(EventKind::kClickable); }
inline EventSet editable() { return EventSet().with(EventKind::kEditable); }
inline EventSet scrollable() { return EventSet().with(EventKind::kScrollable); }

inline UiState make_state(std::string id, std::string template_id, std::string title,
                          std::vector<AxNode> extra) {
  UiState s;
  s.state_id = std::move(id);
  s.template_id = std::move(template_id);
  const std::string root = "/page[@tpl='" + s.template_id + "']";
  s.tree.push_back(make_node("n0", "page", root, "", {0, 0, 256, 512}));
  s.tree.push_back(make_node("n1", "header", root + "/header", title, {0, 0, 256, 48}));
  for (auto& n : extra) {
    n.xpath = root + n.xpath;
    s.tree.push_back(std::move(n));
  }
  s.semantic_label = describe_state(title, s.tree);
  return s;
}

// s0 -> s1 -> ... -> s{n-1}; each non-final state has one "Next" button centered at (150, 300).
// The final state is terminal.
inline EnvGraph make_chain(int n, EdgeFlag flag = EdgeFlag::kValid) {
  std::vector<UiState> states;
  for (int i = 0; i < n; ++i) {
    std::vector<AxNode> nodes;
    if (i + 1 < n) {
      nodes.push_back(make_node("n2", "button", "/body/button[1]", "Next", {100, 270, 100, 60},
                                clickable()));
    }
    nodes.push_back(make_node("n3", "text", "/body/text[1]", "Step " + std::string(1, char('A' + i)),
                              {16, 400, 224, 32}));
    states.push_back(make_state("s" + std::to_string(i), "tpl-" + std::to_string(i),
                                "Page " + std::string(1, char('A' + i)), std::move(nodes)));
  }
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1), "n2",
                     Action::click({150, 300}), flag});
  }
  return EnvGraph("chain", ScreenDims{}, std::move(states), std::move(edges), 0,
                  {static_cast<std::size_t>(n - 1)});
}

inline GenerationSpec demo_spec(int apps, int states, int templates, double fault) {
  GenerationSpec spec;
  spec.n_apps = apps;
  spec.states_per_app = states;
  spec.templates_per_app = templates;
  spec.fault_rate = fault;
  return spec;
}

}  // namespace guidyn::testing
