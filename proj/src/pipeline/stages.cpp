#include "guidyn/pipeline/stages.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/io.hpp"
#include "guidyn/common/parallel.hpp"
#include "guidyn/corpus/funnel.hpp"
#include "guidyn/corpus/pools.hpp"
#include "guidyn/corpus/shards.hpp"
#include "guidyn/eval/harness.hpp"
#include "guidyn/eval/navigation.hpp"
#include "guidyn/explore/explorer.hpp"
#include "guidyn/filter/semantic.hpp"
#include "guidyn/synth/generalization.hpp"

namespace guidyn {

namespace fs = std::filesystem;

namespace {

constexpr int kManifestFormat = 1;

struct StageInfo {
  std::vector<std::string> upstream;
  std::vector<std::string> config_keys;  // keys this stage reads, excluding upstream ones
};

const std::map<std::string, StageInfo>& stage_table() {
  static const std::map<std::string, StageInfo> kTable{
      {"gen-env", {{}, {"seed", "env"}}},
      {"explore", {{"gen-env"}, {"fleet", "shard_size"}}},
      {"dedup-struct", {{"gen-env", "explore"}, {"structural"}}},
      {"dedup-visual", {{"gen-env", "dedup-struct"}, {"visual"}}},
      {"filter-semantic", {{"gen-env", "dedup-visual"}, {"mode"}}},
      {"synth", {{"gen-env", "filter-semantic"}, {"synth"}}},
      {"mix", {{"gen-env", "synth"}, {"mix"}}},
      {"gen-eval-set", {{"gen-env"}, {"eval_set"}}},
      {"eval", {{"gen-env", "gen-eval-set"}, {"eval"}}},
      {"report", {{"explore", "dedup-struct", "dedup-visual", "filter-semantic", "synth"}, {}}},
  };
  return kTable;
}

const StageInfo& info(const std::string& stage) {
  auto it = stage_table().find(stage);
  if (it == stage_table().end()) throw ConfigError("unknown stage " + stage);
  return it->second;
}

std::set<std::string> keys_of(const std::string& stage) {
  std::set<std::string> keys;
  const StageInfo& si = info(stage);
  keys.insert(si.config_keys.begin(), si.config_keys.end());
  for (const auto& u : si.upstream) {
    const auto k = keys_of(u);
    keys.insert(k.begin(), k.end());
  }
  return keys;
}

template <typename... Args>
void log(const RunContext& ctx, fmt::format_string<Args...> f, Args&&... args) {
  if (ctx.log == nullptr) return;
  fmt::print(ctx.log, "{}\n", fmt::format(f, std::forward<Args>(args)...));
  std::fflush(ctx.log);
}

// Relative path -> sha256 for every file under `dir` except the manifest, sorted.
Json hash_outputs(const fs::path& dir, std::size_t workers) {
  std::vector<std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string rel = fs::relative(e.path(), dir).generic_string();
    if (rel != "manifest.json") files.push_back(rel);
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> digests(files.size());
  parallel_for(files.size(), workers, [&](std::size_t i) { digests[i] = sha256_file(dir / files[i]); });
  Json out = Json::object();
  for (std::size_t i = 0; i < files.size(); ++i) out[files[i]] = digests[i];
  return out;
}

// State shared by one stage invocation.
struct StageRun {
  const RunContext& ctx;
  std::string stage;
  fs::path dir;
  Json snapshot;
  std::map<std::string, Json> upstream;
  Json upstream_digests = Json::object();

  fs::path upstream_dir(const std::string& name) const { return ctx.out / name; }

  std::vector<EnvGraph> graphs() const {
    const Json& m = upstream.at("gen-env");
    const auto ids = m.at("report").at("app_ids").get<std::vector<std::string>>();
    return load_environment(upstream_dir("gen-env") / "env", ids);
  }

  std::vector<Transition> transitions(const std::string& name) const {
    const Json& m = upstream.at(name);
    if (name == "explore") return read_corpus(upstream_dir(name) / "shards", m.at("corpus")).transitions();
    return transitions_from_lines(read_shards(upstream_dir(name) / "survivors", m.at("corpus")));
  }

  Json write_transitions(const std::vector<Transition>& ts, const std::string& sub) const {
    return write_shards(transitions_to_lines(ts), dir / sub, ctx.config.shard_size, "part", ctx.workers);
  }
};

StageRun open_stage(const std::string& stage, const RunContext& ctx) {
  StageRun run{ctx, stage, ctx.out / stage, config_to_json(ctx.config), {}, Json::object()};
  for (const auto& u : info(stage).upstream) {
    Json m = load_manifest(ctx.out, u);
    for (const auto& [name, digest] : m.at("upstream").items()) {
      if (manifest_digest(ctx.out, name) != digest.get<std::string>()) {
        throw ManifestError(fmt::format("stage {} is stale: {} was re-run after it", u, name));
      }
    }
    for (const auto& key : keys_of(u)) {
      if (!m.at("config").contains(key) || m.at("config").at(key) != run.snapshot.at(key)) {
        throw ConfigError(fmt::format("config key '{}' differs from the one used by stage {}; re-run {}",
                                      key, u, u));
      }
    }
    run.upstream_digests[u] = manifest_digest(ctx.out, u);
    run.upstream.emplace(u, std::move(m));
  }
  // Clear stale outputs; the manifest is written last so partial runs stay detectable.
  fs::remove_all(run.dir);
  fs::create_directories(run.dir);
  return run;
}

Json finish_stage(const StageRun& run, Json report, Json extra = Json::object()) {
  Json m;
  m["stage"] = run.stage;
  m["format"] = kManifestFormat;
  m["config"] = run.snapshot;
  m["upstream"] = run.upstream_digests;
  for (auto& [k, v] : extra.items()) m[k] = v;
  m["outputs"] = hash_outputs(run.dir, run.ctx.workers);
  m["report"] = std::move(report);
  write_file(run.dir / "manifest.json", m.dump(2) + "\n");
  return m;
}

Json flag_counts(const std::vector<Transition>& ts) {
  std::map<std::string, std::size_t> counts;
  for (auto f : {EdgeFlag::kValid, EdgeFlag::kSystemError, EdgeFlag::kRenderArtifact, EdgeFlag::kNoOp}) {
    counts[to_string(f)] = 0;
  }
  for (const auto& t : ts) ++counts[to_string(t.edge_flag)];
  return counts;
}

Json stage_gen_env(const StageRun& run) {
  const auto& c = run.ctx.config;
  const auto graphs = generate_environment(stream_seed(c, SeedStream::kEnv), c.env, run.ctx.workers);
  save_environment(graphs, run.dir / "env");
  Json report;
  std::size_t states = 0, edges = 0;
  Json ids = Json::array();
  for (const auto& g : graphs) {
    ids.push_back(g.app_id());
    states += g.states().size();
    edges += g.edges().size();
  }
  report["app_ids"] = ids;
  report["states"] = states;
  report["edges"] = edges;
  log(run.ctx, "gen-env: {} apps, {} states, {} edges", graphs.size(), states, edges);
  return finish_stage(run, report);
}

Json stage_explore(const StageRun& run) {
  const auto& c = run.ctx.config;
  const auto graphs = run.graphs();
  FleetSpec spec;
  spec.n_workers = c.fleet.workers;
  spec.budget_per_worker = c.fleet.budget_per_worker;
  spec.base_seed = stream_seed(c, SeedStream::kFleet);
  spec.source_priority = c.fleet.source_priority;
  const RawCorpus corpus = run_fleet(graphs, spec, run.ctx.workers);
  const Json section = write_corpus(corpus, run.dir / "shards", run.ctx.workers);
  const auto all = corpus.transitions();
  Json report;
  report["records_in"] = 0;
  report["records_out"] = all.size();
  report["rejections"] = Json::object();
  report["edge_flags"] = flag_counts(all);
  log(run.ctx, "explore: {} raw transitions in {} shards", all.size(), corpus.shards.size());
  return finish_stage(run, report, {{"corpus", section}});
}

Json stage_dedup_struct(const StageRun& run) {
  const auto& c = run.ctx.config;
  const auto corpus = run.transitions("explore");
  const GraphSet set(run.graphs());
  const DedupResult r = dedup_structural(corpus, set, c.structural, run.ctx.workers);
  const Json section = run.write_transitions(r.survivors, "survivors");
  std::vector<std::string> lines;
  for (const auto& [member, rep] : r.clusters) lines.push_back(Json{{"member", member}, {"representative", rep}}.dump());
  write_lines(run.dir / "clusters.jsonl", lines);
  Json report;
  report["records_in"] = corpus.size();
  report["records_out"] = r.survivors.size();
  report["rejections"] = {{"near_duplicate", corpus.size() - r.survivors.size()}};
  log(run.ctx, "dedup-struct: {} -> {}", corpus.size(), r.survivors.size());
  return finish_stage(run, report, {{"corpus", section}});
}

Json stage_dedup_visual(const StageRun& run) {
  const auto& c = run.ctx.config;
  const auto corpus = run.transitions("dedup-struct");
  const GraphSet set(run.graphs());
  const VisualDedupResult r = dedup_visual(corpus, set, c.visual, run.ctx.workers);
  const Json section = run.write_transitions(r.survivors, "survivors");
  std::vector<std::string> lines;
  for (const auto& [member, rep] : r.clusters) lines.push_back(Json{{"member", member}, {"representative", rep}}.dump());
  write_lines(run.dir / "clusters.jsonl", lines);
  write_lines(run.dir / "static_dropped.txt", r.static_dropped);
  write_lines(run.dir / "fingerprints.txt", fingerprint_lines(r));
  Json report;
  report["records_in"] = corpus.size();
  report["records_out"] = r.survivors.size();
  report["rejections"] = {{"static", r.static_dropped.size()},
                          {"near_duplicate", corpus.size() - r.static_dropped.size() - r.survivors.size()}};
  log(run.ctx, "dedup-visual: {} -> {} ({} static)", corpus.size(), r.survivors.size(), r.static_dropped.size());
  return finish_stage(run, report, {{"corpus", section}});
}

Json stage_filter_semantic(const StageRun& run) {
  const auto& c = run.ctx.config;
  const auto corpus = run.transitions("dedup-visual");
  const GraphSet set(run.graphs());
  std::unique_ptr<Verifier> verifier;
  if (c.mode == RunMode::kRemote) {
    verifier = std::make_unique<RemoteVerifier>(remote_config(c));
  } else {
    verifier = std::make_unique<RuleVerifier>();
  }
  const SemanticResult r = filter_semantic(corpus, set, *verifier, run.ctx.workers);
  const Json section = run.write_transitions(r.survivors, "survivors");
  const Json quarantine = run.write_transitions(r.quarantined, "quarantine");
  std::vector<std::string> lines;
  for (const auto& v : r.verdicts) lines.push_back(verdict_to_json(v).dump());
  write_lines(run.dir / "verdicts.jsonl", lines);
  Json rejections = Json::object();
  for (const auto& [reason, n] : r.reject_reasons) rejections[reason] = n;
  if (r.unavailable > 0) rejections["verifier_unavailable"] = r.unavailable;
  if (r.malformed > 0) rejections["malformed_response"] = r.malformed;
  Json report;
  report["records_in"] = corpus.size();
  report["records_out"] = r.survivors.size();
  report["rejections"] = rejections;
  report["verifier"] = verifier->name();
  report["accepted"] = r.accepted;
  report["rejected"] = r.rejected;
  report["unavailable"] = r.unavailable;
  report["malformed"] = r.malformed;
  report["input_edge_flags"] = flag_counts(corpus);
  log(run.ctx, "filter-semantic: {} -> {} ({} rejected, {} quarantined)", corpus.size(),
      r.survivors.size(), r.rejected, r.quarantined.size());
  return finish_stage(run, report, {{"corpus", section}, {"quarantine", quarantine}});
}

Json stage_synth(const StageRun& run) {
  const auto& c = run.ctx.config;
  const auto corpus = run.transitions("filter-semantic");
  const GraphSet set(run.graphs());
  std::unique_ptr<Annotator> annotator;
  if (c.mode == RunMode::kRemote) {
    annotator = std::make_unique<RemoteAnnotator>(remote_config(c));
  } else {
    annotator = std::make_unique<OfflineAnnotator>();
  }
  const AnnotationBatch batch = annotate_all(corpus, set, *annotator, run.ctx.workers);
  std::map<std::string, const Transition*> by_id;
  for (const auto& t : corpus) by_id[t.transition_id] = &t;

  std::vector<std::vector<std::string>> per(batch.annotations.size());
  parallel_for(batch.annotations.size(), run.ctx.workers, [&](std::size_t i) {
    const auto& ann = batch.annotations[i];
    for (const auto& s : emit_samples(*by_id.at(ann.transition_id), ann, c.task_kinds)) {
      validate(s);
      per[i].push_back(sample_to_json(s).dump());
    }
  });
  std::vector<std::string> samples;
  for (auto& p : per) {
    for (auto& l : p) samples.push_back(std::move(l));
  }
  std::vector<std::string> ann_lines;
  for (const auto& a : batch.annotations) ann_lines.push_back(annotation_to_json(a).dump());
  write_lines(run.dir / "annotations.jsonl", ann_lines);
  write_lines(run.dir / "skipped.txt", batch.skipped);
  const Json section = write_shards(samples, run.dir / "samples", c.shard_size, "part", run.ctx.workers);

  Json report;
  report["records_in"] = corpus.size();
  report["records_out"] = samples.size();
  report["rejections"] = Json::object();
  if (!batch.skipped.empty()) report["rejections"]["annotation_skipped"] = batch.skipped.size();
  report["annotator"] = annotator->name();
  report["annotated"] = batch.annotations.size();
  Json kinds = Json::object();
  for (TaskKind k : c.task_kinds) kinds[to_string(k)] = batch.annotations.size();
  report["samples_per_kind"] = kinds;
  log(run.ctx, "synth: {} transitions -> {} samples", corpus.size(), samples.size());
  return finish_stage(run, report, {{"prompt_version", std::string(kPromptVersion)}, {"samples", section}});
}

Json stage_mix(const StageRun& run) {
  const auto& c = run.ctx.config;
  const auto lines = read_shards(run.upstream_dir("synth") / "samples", run.upstream.at("synth").at("samples"));
  std::vector<Json> samples;
  samples.reserve(lines.size());
  for (const auto& l : lines) samples.push_back(Json::parse(l));
  const auto dynamics = dynamics_pool(samples);
  const auto general = general_pool(c.mix.general_pool_size, stream_seed(c, SeedStream::kGeneralPool));
  const auto grounding =
      grounding_pool(run.graphs(), c.mix.grounding_pool_size, stream_seed(c, SeedStream::kGroundingPool));
  std::size_t total = c.mix.total;
  if (total == 0) {
    total = max_feasible_total(mix_spec(c, 0), {dynamics.size(), general.size(), grounding.size()});
  }
  const MixSpec spec = mix_spec(c, total);
  const auto mixed = mix(dynamics, general, grounding, spec);
  std::vector<std::string> out;
  out.reserve(mixed.size());
  std::array<std::size_t, 3> counts{};
  for (const auto& r : mixed) {
    out.push_back(mixed_to_line(r));
    ++counts[static_cast<std::size_t>(r.source)];
  }
  const Json section = write_shards(out, run.dir / "corpus", c.shard_size, "part", run.ctx.workers);
  Json report;
  report["records_in"] = dynamics.size();
  report["records_out"] = mixed.size();
  report["total"] = total;
  for (std::size_t p = 0; p < 3; ++p) {
    const std::string name = to_string(static_cast<PoolKind>(p));
    report["counts"][name] = counts[p];
    report["fractions"][name] = total == 0 ? 0.0 : static_cast<double>(counts[p]) / static_cast<double>(total);
  }
  report["pools"] = {
      {"dynamics", {{"source", "synth"}, {"size", dynamics.size()}}},
      {"general", {{"name", kGeneralPoolName}, {"size", general.size()}, {"seed", stream_seed(c, SeedStream::kGeneralPool)}}},
      {"grounding", {{"name", kGroundingPoolName}, {"size", grounding.size()}, {"seed", stream_seed(c, SeedStream::kGroundingPool)}}}};
  log(run.ctx, "mix: {} records ({} dynamics, {} general, {} grounding)", total, counts[0], counts[1], counts[2]);
  return finish_stage(run, report, {{"corpus", section}});
}

Json stage_gen_eval_set(const StageRun& run) {
  const auto& c = run.ctx.config;
  const auto graphs = run.graphs();
  const std::uint64_t seed = stream_seed(c, SeedStream::kEvalSet);
  const auto nav = build_navigation_items(graphs, c.eval_set.nav_per_app, c.eval_set.coord_space, seed);
  std::vector<std::string> nav_lines;
  for (const auto& n : nav) nav_lines.push_back(nav_item_to_json(n).dump());
  write_lines(run.dir / "navigation.jsonl", nav_lines);

  std::vector<std::string> gen_lines;
  Json counts = Json::object();
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (GenLevel level : {GenLevel::kL1, GenLevel::kL2}) {
      const std::size_t n = level == GenLevel::kL1 ? c.eval_set.l1_per_app : c.eval_set.l2_per_app;
      for (GenTask task : {GenTask::kForward, GenTask::kInverse}) {
        const std::uint64_t s = derive_seed(derive_seed(seed, gi + 1),
                                            static_cast<std::uint64_t>(level) * 2 + static_cast<std::uint64_t>(task));
        for (const auto& item : build_generalization_items(graphs[gi], level, task, n, s)) {
          if (!replay(graphs[gi], item)) throw DataError("generalization item does not replay: " + item.item_id);
          gen_lines.push_back(item_to_json(item).dump());
        }
        const std::string key = to_string(level) + "-" + to_string(task);
        counts[key] = counts.value(key, std::size_t{0}) + n;
      }
    }
  }
  write_lines(run.dir / "generalization.jsonl", gen_lines);
  Json report;
  report["navigation_items"] = nav.size();
  report["generalization_items"] = counts;
  report["coord_space"] = to_string(c.eval_set.coord_space);
  log(run.ctx, "gen-eval-set: {} navigation items, {} generalization items", nav.size(), gen_lines.size());
  return finish_stage(run, report, {{"prompt_version", std::string(kPromptVersion)}});
}

std::map<std::string, std::string> read_keyed(const std::string& path, const char* value_key) {
  std::map<std::string, std::string> out;
  if (!fs::exists(path)) throw ConfigError("file not found: " + path);
  for (const auto& line : read_lines(path)) {
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      out[j.at("item_id").get<std::string>()] = j.at(value_key).get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError(fmt::format("malformed line in {}: {}", path, e.what()));
    }
  }
  return out;
}

Json stage_eval(const StageRun& run) {
  const auto& c = run.ctx.config;
  const fs::path set_dir = run.upstream_dir("gen-eval-set");
  std::vector<NavItem> nav;
  for (const auto& l : read_lines(set_dir / "navigation.jsonl")) nav.push_back(nav_item_from_json(Json::parse(l)));
  const GraphSet set(run.graphs());

  std::map<std::string, std::string> given;
  if (!c.eval.predictions.empty()) given = read_keyed(c.eval.predictions, "prediction");
  std::size_t missing = 0;
  std::vector<EvalRecord> records;
  for (const auto& item : nav) {
    std::string prediction;
    if (c.eval.predictions.empty()) {
      prediction = baseline_prediction(item, set, stream_seed(c, SeedStream::kBaseline));
    } else if (auto it = given.find(item.item_id); it != given.end()) {
      prediction = it->second;
    } else {
      ++missing;  // scored as a parse failure
    }
    records.push_back(make_record(item, prediction));
  }
  ScoringParams params;
  params.radius_fraction = c.eval.radius_fraction;
  const Metrics m = evaluate(records, params);
  std::vector<std::string> lines;
  for (const auto& r : records) lines.push_back(record_to_json(r).dump());
  write_lines(run.dir / "records.jsonl", lines);

  Json report;
  report["predictor"] = c.eval.predictions.empty() ? "baseline" : "file";
  report["missing_predictions"] = missing;
  report["navigation"] = metrics_to_json(m);

  if (!c.eval.judgments.empty()) {
    const auto outputs = read_keyed(c.eval.judgments, "output");
    std::map<std::string, GeneralizationItem> items;
    for (const auto& l : read_lines(set_dir / "generalization.jsonl")) {
      auto item = item_from_json(Json::parse(l));
      items.emplace(item.item_id, std::move(item));
    }
    std::map<std::string, std::pair<JudgeTask, std::vector<std::string>>> groups;
    for (const auto& [id, out] : outputs) {
      auto it = items.find(id);
      if (it == items.end()) throw DataError("judgment for unknown item " + id);
      const auto& item = it->second;
      const JudgeTask task = item.task == GenTask::kForward ? JudgeTask::kForward : JudgeTask::kInverse;
      auto& g = groups[to_string(item.level) + "-" + to_string(item.task)];
      g.first = task;
      g.second.push_back(out);
    }
    Json judged = Json::object();
    for (const auto& [key, g] : groups) {
      judged[key] = {{"items", g.second.size()}, {"score", aggregate_judged(g.second, g.first)}};
    }
    report["generalization"] = judged;
  } else {
    report["generalization"] = "not_run";
  }
  write_file(run.dir / "metrics.json", report.dump(2) + "\n");
  log(run.ctx, "eval: {} items, EM {:.4f}, TM {:.4f}, parse failures {:.4f}", m.n, m.em, m.tm,
      m.parse_failure_rate);
  return finish_stage(run, report);
}

Json stage_report(const StageRun& run) {
  const FunnelReport f = report_funnel(run.upstream);
  const Json j = funnel_to_json(f);
  const std::string table = funnel_table(f);
  write_file(run.dir / "funnel.json", j.dump(2) + "\n");
  write_file(run.dir / "funnel.txt", table);
  if (run.ctx.log != nullptr) {
    fmt::print(run.ctx.log, "{}", table);
    std::fflush(run.ctx.log);
  }
  return finish_stage(run, j);
}

}  // namespace

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> kNames{"gen-env",         "explore", "dedup-struct",
                                               "dedup-visual",    "filter-semantic",
                                               "synth",           "mix",     "gen-eval-set",
                                               "eval",            "report"};
  return kNames;
}

const std::vector<std::string>& upstream_of(const std::string& stage) { return info(stage).upstream; }

Json load_manifest(const fs::path& out, const std::string& stage) {
  const fs::path dir = out / stage;
  const fs::path path = dir / "manifest.json";
  if (!fs::exists(path)) {
    throw ManifestError(fmt::format("missing manifest for stage {} ({}); run it first", stage, path.string()));
  }
  Json m;
  try {
    m = Json::parse(read_file(path));
    if (m.at("stage").get<std::string>() != stage) throw ManifestError("manifest names a different stage");
    if (m.at("format").get<int>() != kManifestFormat) throw ManifestError("unsupported manifest format");
    for (const auto& [file, digest] : m.at("outputs").items()) {
      if (!fs::exists(dir / file)) throw IntegrityError(fmt::format("stage {} output {} is missing", stage, file));
      if (sha256_file(dir / file) != digest.get<std::string>()) {
        throw IntegrityError(fmt::format("stage {} output {} does not match its digest", stage, file));
      }
    }
    (void)m.at("config");
    (void)m.at("upstream");
    (void)m.at("report");
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(fmt::format("malformed manifest for stage {}: {}", stage, e.what()));
  }
  return m;
}

std::string manifest_digest(const fs::path& out, const std::string& stage) {
  const fs::path path = out / stage / "manifest.json";
  if (!fs::exists(path)) throw ManifestError("missing manifest for stage " + stage);
  return sha256_file(path);
}

Json run_stage(const std::string& stage, const RunContext& ctx) {
  validate(ctx.config);
  const StageRun run = open_stage(stage, ctx);
  if (stage == "gen-env") return stage_gen_env(run);
  if (stage == "explore") return stage_explore(run);
  if (stage == "dedup-struct") return stage_dedup_struct(run);
  if (stage == "dedup-visual") return stage_dedup_visual(run);
  if (stage == "filter-semantic") return stage_filter_semantic(run);
  if (stage == "synth") return stage_synth(run);
  if (stage == "mix") return stage_mix(run);
  if (stage == "gen-eval-set") return stage_gen_eval_set(run);
  if (stage == "eval") return stage_eval(run);
  return stage_report(run);
}

void run_all(const RunContext& ctx) {
  for (const auto& s : stage_names()) run_stage(s, ctx);
}

}  // namespace guidyn
