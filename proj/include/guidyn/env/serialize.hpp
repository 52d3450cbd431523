#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "guidyn/env/graph.hpp"

namespace guidyn {

using Json = nlohmann::ordered_json;

Json action_to_json(const Action& a);
Action action_from_json(const Json& j);

Json node_to_json(const AxNode& n);
AxNode node_from_json(const Json& j);

// Writes one directory per app under `root`:
//   <app>/graph.json      app manifest (dims, entry, terminals, counts)
//   <app>/states.jsonl    one state record per line
//   <app>/edges.jsonl     one edge record per line
//   <app>/rasters/<state>.gray
// Returns relative path -> sha256 for every written file, in sorted order.
std::map<std::string, std::string> save_environment(const std::vector<EnvGraph>& graphs,
                                                    const std::filesystem::path& root);

// Loads apps listed in `app_ids`. Rasters are read from disk and checked against a
// re-render of the tree.
std::vector<EnvGraph> load_environment(const std::filesystem::path& root,
                                       const std::vector<std::string>& app_ids);

// Text form of one graph (manifest + states + edges) without rasters, for comparisons.
std::string serialize_graph_text(const EnvGraph& graph);

// Lookup of graphs by app id.
class GraphSet {
 public:
  GraphSet() = default;
  explicit GraphSet(std::vector<EnvGraph> graphs);

  const EnvGraph& at(const std::string& app_id) const;
  const std::vector<EnvGraph>& graphs() const noexcept { return graphs_; }
  std::size_t size() const noexcept { return graphs_.size(); }

 private:
  std::vector<EnvGraph> graphs_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace guidyn
