#include "guidyn/pipeline/config.hpp"

#include <set>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/io.hpp"
#include "guidyn/common/rng.hpp"

namespace guidyn {

std::string to_string(RunMode m) { return m == RunMode::kOffline ? "offline" : "remote"; }

RunMode run_mode_from_string(std::string_view s) {
  if (s == "offline") return RunMode::kOffline;
  if (s == "remote") return RunMode::kRemote;
  throw ConfigError("mode must be offline or remote, got " + std::string(s));
}

namespace {

// Reads known keys of one object and rejects any key it was not asked about.
class Section {
 public:
  Section(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(path_ + "." + key + " has the wrong type");
    }
  }

  const Json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown config key " + path_ + "." + key);
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

PipelineConfig config_from_json(const Json& j) {
  PipelineConfig c;
  Section top(j, "config");
  top.read("seed", c.seed);
  std::string mode = to_string(c.mode);
  top.read("mode", mode);
  c.mode = run_mode_from_string(mode);
  top.read("shard_size", c.shard_size);

  if (const Json* e = top.child("env")) {
    Section s(*e, "env");
    s.read("apps", c.env.n_apps);
    s.read("states_per_app", c.env.states_per_app);
    s.read("templates_per_app", c.env.templates_per_app);
    s.read("fault_rate", c.env.fault_rate);
    s.read("edge_density", c.env.edge_density);
    s.read("terminal_fraction", c.env.terminal_fraction);
    s.read("width", c.env.dims.width);
    s.read("height", c.env.dims.height);
    s.finish();
  }
  if (const Json* e = top.child("fleet")) {
    Section s(*e, "fleet");
    s.read("workers", c.fleet.workers);
    s.read("budget_per_worker", c.fleet.budget_per_worker);
    s.read("source_priority", c.fleet.source_priority);
    s.finish();
  }
  if (const Json* e = top.child("structural")) {
    Section s(*e, "structural");
    s.read("k", c.structural.k);
    s.read("bands", c.structural.bands);
    s.read("rows", c.structural.rows);
    s.read("jaccard_threshold", c.structural.jaccard_threshold);
    s.read("perm_seed", c.structural.perm_seed);
    s.finish();
  }
  if (const Json* e = top.child("visual")) {
    Section s(*e, "visual");
    s.read("theta_static", c.visual.theta_static);
    s.read("theta_cluster", c.visual.theta_cluster);
    s.read("n_bit_samples", c.visual.n_bit_samples);
    s.read("sample_width", c.visual.sample_width);
    s.read("sample_seed", c.visual.sample_seed);
    s.finish();
  }
  if (const Json* e = top.child("synth")) {
    Section s(*e, "synth");
    std::vector<std::string> kinds;
    s.read("task_kinds", kinds);
    if (e->contains("task_kinds")) {
      c.task_kinds.clear();
      for (const auto& k : kinds) {
        try {
          c.task_kinds.push_back(task_kind_from_string(k));
        } catch (const Error&) {
          throw ConfigError("unknown task kind " + k);
        }
      }
    }
    s.finish();
  }
  if (const Json* e = top.child("mix")) {
    Section s(*e, "mix");
    s.read("ratio_dynamics", c.mix.ratio_dynamics);
    s.read("ratio_general", c.mix.ratio_general);
    s.read("ratio_grounding", c.mix.ratio_grounding);
    s.read("total", c.mix.total);
    s.read("general_pool_size", c.mix.general_pool_size);
    s.read("grounding_pool_size", c.mix.grounding_pool_size);
    s.finish();
  }
  if (const Json* e = top.child("eval_set")) {
    Section s(*e, "eval_set");
    s.read("nav_per_app", c.eval_set.nav_per_app);
    std::string space = to_string(c.eval_set.coord_space);
    s.read("coord_space", space);
    const auto parsed = coord_space_from_string(space);
    if (!parsed) throw ConfigError("eval_set.coord_space must be absolute or normalized_1000");
    c.eval_set.coord_space = *parsed;
    s.read("l1_per_app", c.eval_set.l1_per_app);
    s.read("l2_per_app", c.eval_set.l2_per_app);
    s.finish();
  }
  if (const Json* e = top.child("eval")) {
    Section s(*e, "eval");
    s.read("predictions", c.eval.predictions);
    s.read("judgments", c.eval.judgments);
    s.read("radius_fraction", c.eval.radius_fraction);
    s.finish();
  }
  if (const Json* e = top.child("remote")) {
    Section s(*e, "remote");
    s.read("max_retries", c.remote.max_retries);
    s.read("timeout_ms", c.remote.timeout_ms);
    s.read("backoff_ms", c.remote.backoff_ms);
    s.read("max_in_flight", c.remote.max_in_flight);
    s.finish();
  }
  top.finish();
  validate(c);
  return c;
}

Json config_to_json(const PipelineConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["mode"] = to_string(c.mode);
  j["shard_size"] = c.shard_size;
  j["env"] = {{"apps", c.env.n_apps},
              {"states_per_app", c.env.states_per_app},
              {"templates_per_app", c.env.templates_per_app},
              {"fault_rate", c.env.fault_rate},
              {"edge_density", c.env.edge_density},
              {"terminal_fraction", c.env.terminal_fraction},
              {"width", c.env.dims.width},
              {"height", c.env.dims.height}};
  j["fleet"] = {{"workers", c.fleet.workers},
                {"budget_per_worker", c.fleet.budget_per_worker},
                {"source_priority", c.fleet.source_priority}};
  j["structural"] = {{"k", c.structural.k},
                     {"bands", c.structural.bands},
                     {"rows", c.structural.rows},
                     {"jaccard_threshold", c.structural.jaccard_threshold},
                     {"perm_seed", c.structural.perm_seed}};
  j["visual"] = {{"theta_static", c.visual.theta_static},
                 {"theta_cluster", c.visual.theta_cluster},
                 {"n_bit_samples", c.visual.n_bit_samples},
                 {"sample_width", c.visual.sample_width},
                 {"sample_seed", c.visual.sample_seed}};
  Json kinds = Json::array();
  for (TaskKind k : c.task_kinds) kinds.push_back(to_string(k));
  j["synth"] = {{"task_kinds", kinds}};
  j["mix"] = {{"ratio_dynamics", c.mix.ratio_dynamics},
              {"ratio_general", c.mix.ratio_general},
              {"ratio_grounding", c.mix.ratio_grounding},
              {"total", c.mix.total},
              {"general_pool_size", c.mix.general_pool_size},
              {"grounding_pool_size", c.mix.grounding_pool_size}};
  j["eval_set"] = {{"nav_per_app", c.eval_set.nav_per_app},
                   {"coord_space", to_string(c.eval_set.coord_space)},
                   {"l1_per_app", c.eval_set.l1_per_app},
                   {"l2_per_app", c.eval_set.l2_per_app}};
  j["eval"] = {{"predictions", c.eval.predictions},
               {"judgments", c.eval.judgments},
               {"radius_fraction", c.eval.radius_fraction}};
  j["remote"] = {{"max_retries", c.remote.max_retries},
                 {"timeout_ms", c.remote.timeout_ms},
                 {"backoff_ms", c.remote.backoff_ms},
                 {"max_in_flight", c.remote.max_in_flight}};
  return j;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string());
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return config_from_json(j);
}

void validate(const PipelineConfig& c) {
  validate(c.env);
  if (c.fleet.workers < 1) throw ConfigError("fleet.workers must be >= 1");
  if (c.fleet.budget_per_worker < 1) throw ConfigError("fleet.budget_per_worker must be >= 1");
  validate(c.structural);
  validate(c.visual);
  if (c.task_kinds.empty()) throw ConfigError("synth.task_kinds must not be empty");
  validate(mix_spec(c, c.mix.total));
  if (c.shard_size < 1) throw ConfigError("shard_size must be >= 1");
  if (!(c.eval.radius_fraction > 0.0 && c.eval.radius_fraction <= 1.0)) {
    throw ConfigError("eval.radius_fraction must lie in (0, 1]");
  }
  if (c.remote.max_retries < 0 || c.remote.timeout_ms < 1 || c.remote.backoff_ms < 0 ||
      c.remote.max_in_flight < 1) {
    throw ConfigError("remote settings out of range");
  }
}

MixSpec mix_spec(const PipelineConfig& c, std::size_t total) {
  MixSpec s;
  s.ratio_dynamics = c.mix.ratio_dynamics;
  s.ratio_general = c.mix.ratio_general;
  s.ratio_grounding = c.mix.ratio_grounding;
  s.total = total;
  s.seed = stream_seed(c, SeedStream::kMix);
  return s;
}

RemoteConfig remote_config(const PipelineConfig& c) {
  RemoteConfig base;
  base.max_retries = c.remote.max_retries;
  base.timeout_ms = c.remote.timeout_ms;
  base.backoff_ms = c.remote.backoff_ms;
  base.max_in_flight = c.remote.max_in_flight;
  return remote_config_from_env(base);
}

std::uint64_t stream_seed(const PipelineConfig& c, SeedStream s) {
  return derive_seed(c.seed, static_cast<std::uint64_t>(s));
}

}  // namespace guidyn
