#include "guidyn/env/serialize.hpp"

#include "guidyn/common/errors.hpp"
#include "guidyn/common/io.hpp"
#include "guidyn/env/render.hpp"

namespace guidyn {

Json action_to_json(const Action& a) {
  Json j;
  j["kind"] = to_string(a.kind());
  if (a.has_point()) {
    j["x"] = a.point().x;
    j["y"] = a.point().y;
  }
  if (a.kind() == ActionKind::kInput) j["text"] = a.text();
  if (a.kind() == ActionKind::kScroll) j["direction"] = to_string(a.direction());
  j["coord_space"] = to_string(a.space());
  return j;
}

Action action_from_json(const Json& j) {
  try {
    const auto kind = action_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw DataError("unknown action kind in record");
    auto space = CoordSpace::kAbsolute;
    if (j.contains("coord_space")) {
      auto s = coord_space_from_string(j.at("coord_space").get<std::string>());
      if (!s) throw DataError("unknown coord_space in record");
      space = *s;
    }
    auto point = [&] { return Point{j.at("x").get<int>(), j.at("y").get<int>()}; };
    switch (*kind) {
      case ActionKind::kClick: return Action::click(point(), space);
      case ActionKind::kInput: return Action::input(point(), j.at("text").get<std::string>(), space);
      case ActionKind::kScroll: {
        auto dir = direction_from_string(j.at("direction").get<std::string>());
        if (!dir) throw DataError("unknown scroll direction in record");
        return Action::scroll(point(), *dir, space);
      }
      case ActionKind::kFinish: return Action::finish();
      case ActionKind::kWait: return Action::wait();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed action record: ") + e.what());
  }
  throw DataError("unreachable action kind");
}

Json node_to_json(const AxNode& n) {
  Json j;
  j["node_id"] = n.node_id;
  j["tag"] = n.tag;
  j["xpath"] = n.xpath;
  j["text"] = n.text;
  j["bounds"] = Json::array({n.bounds.x, n.bounds.y, n.bounds.w, n.bounds.h});
  j["events"] = n.events.to_string();
  return j;
}

AxNode node_from_json(const Json& j) {
  AxNode n;
  n.node_id = j.at("node_id").get<std::string>();
  n.tag = j.at("tag").get<std::string>();
  n.xpath = j.at("xpath").get<std::string>();
  n.text = j.at("text").get<std::string>();
  const auto& b = j.at("bounds");
  n.bounds = {b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(), b.at(3).get<int>()};
  n.events = EventSet::parse(j.at("events").get<std::string>());
  return n;
}

namespace {

std::string raster_path(const UiState& s) { return "rasters/" + s.state_id + ".gray"; }

Json manifest_json(const EnvGraph& g) {
  Json j;
  j["app_id"] = g.app_id();
  j["width"] = g.dims().width;
  j["height"] = g.dims().height;
  j["entry"] = g.state(g.entry()).state_id;
  Json terms = Json::array();
  for (std::size_t t : g.terminals()) terms.push_back(g.state(t).state_id);
  j["terminals"] = terms;
  j["n_states"] = g.states().size();
  j["n_edges"] = g.edges().size();
  return j;
}

std::vector<std::string> state_lines(const EnvGraph& g) {
  std::vector<std::string> lines;
  for (const auto& s : g.states()) {
    Json j;
    j["state_id"] = s.state_id;
    j["template_id"] = s.template_id;
    j["semantic_label"] = s.semantic_label;
    j["raster"] = raster_path(s);
    Json tree = Json::array();
    for (const auto& n : s.tree) tree.push_back(node_to_json(n));
    j["tree"] = std::move(tree);
    lines.push_back(j.dump());
  }
  return lines;
}

std::vector<std::string> edge_lines(const EnvGraph& g) {
  std::vector<std::string> lines;
  for (const auto& e : g.edges()) {
    Json j;
    j["from"] = g.state(e.from).state_id;
    j["to"] = g.state(e.to).state_id;
    j["target_node"] = e.target_node;
    j["action"] = action_to_json(e.action);
    j["flag"] = to_string(e.flag);
    lines.push_back(j.dump());
  }
  return lines;
}

}  // namespace

std::string serialize_graph_text(const EnvGraph& graph) {
  std::string out = manifest_json(graph).dump() + "\n";
  out += join_lines(state_lines(graph));
  out += join_lines(edge_lines(graph));
  return out;
}

std::map<std::string, std::string> save_environment(const std::vector<EnvGraph>& graphs,
                                                    const fs::path& root) {
  std::map<std::string, std::string> digests;
  auto put = [&](const std::string& rel, const std::string& content) {
    write_file(root / rel, content);
    digests[rel] = sha256_hex(content);
  };
  for (const auto& g : graphs) {
    const std::string dir = g.app_id() + "/";
    put(dir + "graph.json", manifest_json(g).dump() + "\n");
    put(dir + "states.jsonl", join_lines(state_lines(g)));
    put(dir + "edges.jsonl", join_lines(edge_lines(g)));
    for (const auto& s : g.states()) put(dir + raster_path(s), encode_raster(s.raster));
  }
  return digests;
}

std::vector<EnvGraph> load_environment(const fs::path& root,
                                       const std::vector<std::string>& app_ids) {
  std::vector<EnvGraph> graphs;
  for (const auto& app_id : app_ids) {
    const fs::path dir = root / app_id;
    try {
      const Json m = Json::parse(read_file(dir / "graph.json"));
      const ScreenDims dims{m.at("width").get<int>(), m.at("height").get<int>()};

      std::vector<UiState> states;
      std::map<std::string, std::size_t> index;
      for (const auto& line : read_lines(dir / "states.jsonl")) {
        const Json j = Json::parse(line);
        UiState s;
        s.state_id = j.at("state_id").get<std::string>();
        s.template_id = j.at("template_id").get<std::string>();
        s.semantic_label = j.at("semantic_label").get<std::string>();
        for (const auto& n : j.at("tree")) s.tree.push_back(node_from_json(n));
        s.raster = decode_raster(read_file(dir / j.at("raster").get<std::string>()));
        if (s.raster != render(s.template_id, s.tree, dims)) {
          throw IntegrityError("raster of " + app_id + "/" + s.state_id +
                               " does not match its tree");
        }
        index[s.state_id] = states.size();
        states.push_back(std::move(s));
      }
      auto lookup = [&](const std::string& id) {
        auto it = index.find(id);
        if (it == index.end()) throw DataError("edge references unknown state " + id);
        return it->second;
      };

      std::vector<Edge> edges;
      for (const auto& line : read_lines(dir / "edges.jsonl")) {
        const Json j = Json::parse(line);
        edges.push_back({lookup(j.at("from").get<std::string>()),
                         lookup(j.at("to").get<std::string>()),
                         j.at("target_node").get<std::string>(), action_from_json(j.at("action")),
                         edge_flag_from_string(j.at("flag").get<std::string>())});
      }
      std::vector<std::size_t> terminals;
      for (const auto& t : m.at("terminals")) terminals.push_back(lookup(t.get<std::string>()));
      graphs.emplace_back(app_id, dims, std::move(states), std::move(edges),
                          lookup(m.at("entry").get<std::string>()), std::move(terminals));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed environment record in " + dir.string() + ": " + e.what());
    }
  }
  return graphs;
}

GraphSet::GraphSet(std::vector<EnvGraph> graphs) : graphs_(std::move(graphs)) {
  for (std::size_t i = 0; i < graphs_.size(); ++i) {
    if (!index_.emplace(graphs_[i].app_id(), i).second) {
      throw DataError("duplicate app id " + graphs_[i].app_id());
    }
  }
}

const EnvGraph& GraphSet::at(const std::string& app_id) const {
  auto it = index_.find(app_id);
  if (it == index_.end()) throw DataError("unknown app " + app_id);
  return graphs_[it->second];
}

}  // namespace guidyn
