#include "guidyn/explore/explorer.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/io.hpp"
#include "guidyn/common/parallel.hpp"

namespace guidyn {

std::vector<Transition> explore(const EnvGraph& graph, std::uint64_t worker_seed, int budget,
                                const WalkOptions& options) {
  if (budget < 1) throw ConfigError("exploration budget must be >= 1");
  if (enumerate_affordances(graph.state(graph.entry())).empty()) {
    throw DataError("graph " + graph.app_id() + " has no explorable entry state");
  }
  static const UniformPolicy kUniform;
  const ExplorationPolicy& policy = options.policy ? *options.policy : kUniform;

  Rng rng(worker_seed);
  std::vector<Transition> out;
  out.reserve(static_cast<std::size_t>(budget));
  std::size_t current = graph.entry();
  std::vector<Action> candidates = enumerate_affordances(graph.state(current));
  for (int step_index = 0; step_index < budget; ++step_index) {
    if (graph.is_terminal(current) || candidates.empty()) {
      current = graph.entry();
      candidates = enumerate_affordances(graph.state(current));
    }
    const UiState& pre = graph.state(current);
    const Action& action = candidates[policy.choose(pre, candidates, rng)];
    const StepOutcome outcome = step(graph, current, action);

    Transition t;
    t.transition_id = make_transition_id(graph.app_id(), options.worker_id, step_index);
    t.app_id = graph.app_id();
    t.worker_id = options.worker_id;
    t.step_index = step_index;
    t.pre = pre.state_id;
    t.action = action;
    t.post = graph.state(outcome.next_state).state_id;
    t.edge_flag = outcome.flag;
    t.source_priority = options.source_priority;
    out.push_back(std::move(t));

    if (outcome.next_state != current) {
      current = outcome.next_state;
      candidates = enumerate_affordances(graph.state(current));
    }
  }
  return out;
}

std::size_t RawCorpus::size() const {
  std::size_t n = 0;
  for (const auto& s : shards) n += s.transitions.size();
  return n;
}

std::vector<Transition> RawCorpus::transitions() const {
  std::vector<Transition> out;
  out.reserve(size());
  for (const auto& s : shards) out.insert(out.end(), s.transitions.begin(), s.transitions.end());
  return out;
}

RawCorpus run_fleet(const std::vector<EnvGraph>& graphs, const FleetSpec& spec,
                    std::size_t parallelism) {
  if (graphs.empty()) throw ConfigError("fleet needs at least one graph");
  if (spec.n_workers < 1) throw ConfigError("fleet needs at least one worker");
  if (spec.n_workers > 9999) throw ConfigError("fleet supports at most 9999 workers");

  RawCorpus corpus;
  corpus.shards.resize(static_cast<std::size_t>(spec.n_workers));
  parallel_for(corpus.shards.size(), parallelism, [&](std::size_t i) {
    const EnvGraph& g = graphs[i % graphs.size()];
    WalkOptions options;
    options.worker_id = static_cast<int>(i);
    auto it = spec.source_priority.find(g.app_id());
    options.source_priority = it == spec.source_priority.end() ? 0 : it->second;
    Shard& shard = corpus.shards[i];
    shard.app_id = g.app_id();
    shard.worker_id = options.worker_id;
    shard.transitions = explore(g, derive_seed(spec.base_seed, i), spec.budget_per_worker, options);
  });
  std::stable_sort(corpus.shards.begin(), corpus.shards.end(),
                   [](const Shard& a, const Shard& b) {
                     return std::tie(a.app_id, a.worker_id) < std::tie(b.app_id, b.worker_id);
                   });
  return corpus;
}

Json write_corpus(const RawCorpus& corpus, const std::filesystem::path& dir,
                  std::size_t parallelism) {
  std::vector<Json> entries(corpus.shards.size());
  parallel_for(corpus.shards.size(), parallelism, [&](std::size_t i) {
    const Shard& s = corpus.shards[i];
    const std::string file = fmt::format("shard-{}-w{:04}.jsonl", s.app_id, s.worker_id);
    const std::string content = join_lines(transitions_to_lines(s.transitions));
    write_file(dir / file, content);
    Json e;
    e["file"] = file;
    e["app_id"] = s.app_id;
    e["worker_id"] = s.worker_id;
    e["records"] = s.transitions.size();
    e["sha256"] = sha256_hex(content);
    entries[i] = std::move(e);
  });
  Json section;
  section["shards"] = Json::array();
  for (auto& e : entries) section["shards"].push_back(std::move(e));
  section["records"] = corpus.size();
  return section;
}

RawCorpus read_corpus(const std::filesystem::path& dir, const Json& section) {
  RawCorpus corpus;
  try {
    for (const auto& e : section.at("shards")) {
      const std::string file = e.at("file").get<std::string>();
      const std::string content = read_file(dir / file);
      if (sha256_hex(content) != e.at("sha256").get<std::string>()) {
        throw IntegrityError("digest mismatch for shard " + file);
      }
      Shard s;
      s.app_id = e.at("app_id").get<std::string>();
      s.worker_id = e.at("worker_id").get<int>();
      s.transitions = transitions_from_lines(split_lines(content));
      if (s.transitions.size() != e.at("records").get<std::size_t>()) {
        throw IntegrityError("record count mismatch for shard " + file);
      }
      corpus.shards.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(std::string("malformed corpus manifest: ") + e.what());
  }
  return corpus;
}

}  // namespace guidyn
