#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "guidyn/common/rng.hpp"
#include "guidyn/explore/transition.hpp"

namespace guidyn {

// Chooses which candidate affordance a walker executes next.
class ExplorationPolicy {
 public:
  virtual ~ExplorationPolicy() = default;
  // `candidates` is non-empty. Returns an index into it.
  virtual std::size_t choose(const UiState& state, const std::vector<Action>& candidates,
                             Rng& rng) const = 0;
};

class UniformPolicy final : public ExplorationPolicy {
 public:
  std::size_t choose(const UiState&, const std::vector<Action>& candidates,
                     Rng& rng) const override {
    return static_cast<std::size_t>(rng.below(candidates.size()));
  }
};

struct WalkOptions {
  int worker_id = 0;
  int source_priority = 0;
  const ExplorationPolicy* policy = nullptr;  // null: uniform
};

// Random walk from the entry state emitting exactly `budget` transitions, inert steps
// included. Terminal states (or states without affordances) restart the walk at the entry.
std::vector<Transition> explore(const EnvGraph& graph, std::uint64_t worker_seed, int budget,
                                const WalkOptions& options = {});

struct Shard {
  std::string app_id;
  int worker_id = 0;
  std::vector<Transition> transitions;
};

struct RawCorpus {
  std::vector<Shard> shards;  // ordered by (app_id, worker_id)

  std::size_t size() const;
  // Concatenation in shard order.
  std::vector<Transition> transitions() const;
};

struct FleetSpec {
  int n_workers = 1;
  int budget_per_worker = 1;
  std::uint64_t base_seed = 0;
  std::map<std::string, int> source_priority;  // per app id; default 0
};

// Worker i walks graph (i mod |graphs|) with seed derive_seed(base_seed, i). The merged
// corpus is identical for any `parallelism`.
RawCorpus run_fleet(const std::vector<EnvGraph>& graphs, const FleetSpec& spec,
                    std::size_t parallelism = 1);

// Shard files under `dir`, named shard-<app>-w<worker>.jsonl. Returns the manifest section
// {"shards": [{file, app_id, worker_id, records, sha256}...], "records": N}.
Json write_corpus(const RawCorpus& corpus, const std::filesystem::path& dir,
                  std::size_t parallelism = 1);
// Reads shards listed in a manifest section produced by write_corpus, checking digests.
RawCorpus read_corpus(const std::filesystem::path& dir, const Json& section);

}  // namespace guidyn
