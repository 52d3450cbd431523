#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "guidyn/corpus/mix.hpp"
#include "guidyn/dedup/structural.hpp"
#include "guidyn/dedup/visual.hpp"
#include "guidyn/env/generator.hpp"
#include "guidyn/remote/client.hpp"
#include "guidyn/synth/samples.hpp"

namespace guidyn {

enum class RunMode { kOffline, kRemote };

std::string to_string(RunMode m);
RunMode run_mode_from_string(std::string_view s);

struct FleetConfig {
  int workers = 1;
  int budget_per_worker = 1;
  std::map<std::string, int> source_priority;
};

struct MixConfig {
  double ratio_dynamics = 0.70;
  double ratio_general = 0.20;
  double ratio_grounding = 0.10;
  std::size_t total = 0;  // 0: largest total the pools support
  std::size_t general_pool_size = 1000;
  std::size_t grounding_pool_size = 1000;
};

struct EvalSetConfig {
  std::size_t nav_per_app = 20;
  CoordSpace coord_space = CoordSpace::kAbsolute;
  std::size_t l1_per_app = 10;
  std::size_t l2_per_app = 10;
};

struct EvalConfig {
  std::string predictions;  // JSONL {item_id, prediction}; empty: seeded baseline
  std::string judgments;    // JSONL {item_id, output}; empty: judge step not run
  double radius_fraction = 0.07;
};

struct RemoteSettings {
  int max_retries = 3;
  int timeout_ms = 30000;
  int backoff_ms = 200;
  int max_in_flight = 4;
};

// Every seed and threshold of a run. The worker count is a runtime knob and is not part of
// the config, so it never reaches a manifest.
struct PipelineConfig {
  std::uint64_t seed = 0;
  RunMode mode = RunMode::kOffline;
  GenerationSpec env;
  FleetConfig fleet;
  StructuralParams structural;
  VisualParams visual;
  std::vector<TaskKind> task_kinds = all_task_kinds();
  MixConfig mix;
  EvalSetConfig eval_set;
  EvalConfig eval;
  RemoteSettings remote;
  std::size_t shard_size = 1000;
};

// Missing keys keep their defaults; unknown keys and out-of-range values throw ConfigError.
PipelineConfig config_from_json(const Json& j);
Json config_to_json(const PipelineConfig& c);
PipelineConfig load_config(const std::filesystem::path& path);
void validate(const PipelineConfig& c);

MixSpec mix_spec(const PipelineConfig& c, std::size_t total);
RemoteConfig remote_config(const PipelineConfig& c);

// Stream seeds derived from the run seed, one per consumer.
enum class SeedStream : std::uint64_t {
  kEnv = 1,
  kFleet = 2,
  kMix = 3,
  kGeneralPool = 4,
  kGroundingPool = 5,
  kEvalSet = 6,
  kBaseline = 7,
};
std::uint64_t stream_seed(const PipelineConfig& c, SeedStream s);

}  // namespace guidyn
