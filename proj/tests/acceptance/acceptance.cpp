// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "../support/eval_fixture.hpp"
#include "../support/oracles.hpp"
#include "../unit/fixtures.hpp"
#include "guidyn/common/errors.hpp"
#include "guidyn/common/io.hpp"
#include "guidyn/corpus/funnel.hpp"
#include "guidyn/corpus/mix.hpp"
#include "guidyn/corpus/shards.hpp"
#include "guidyn/env/coords.hpp"
#include "guidyn/explore/explorer.hpp"
#include "guidyn/filter/semantic.hpp"
#include "guidyn/pipeline/stages.hpp"
#include "guidyn/synth/generalization.hpp"

using namespace guidyn;
using namespace guidyn::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("guidyn-acceptance-" + name);
  fs::remove_all(p);
  return p;
}

// ---------- AC1 ----------

// States built from a few base layouts with random node drops and extras, so that
// transitions sharing base layouts land on both sides of the 0.85 threshold.
GraphSet mutated_graphs(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<UiState> states;
  const char* tags[] = {"button", "text", "input", "image", "list"};
  for (int base = 0; base < 6; ++base) {
    for (int v = 0; v < 20; ++v) {
      std::vector<AxNode> nodes;
      int slot = 0;
      for (int i = 0; i < 18; ++i) {
        if (gen() % 100 < 8) continue;  // drop
        const std::string tag = tags[(base + i) % 5];
        nodes.push_back(make_node("n" + std::to_string(slot + 2), tag,
                                  "/body/" + tag + "[" + std::to_string(i + 1) + "]", "x",
                                  {8, 50 + 24 * (i % 18), 200, 20},
                                  tag == "input" ? editable() : clickable()));
        ++slot;
      }
      for (int e = 0; e < 3; ++e) {
        if (gen() % 100 < 30) {
          nodes.push_back(make_node("n" + std::to_string(slot + 2), "text",
                                    "/extra/text[" + std::to_string(e + 1) + "]", "y",
                                    {8, 10, 100, 20}));
          ++slot;
        }
      }
      states.push_back(make_state("b" + std::to_string(base) + "v" + std::to_string(v),
                                  "base-" + std::to_string(base), "T", std::move(nodes)));
    }
  }
  // Edgeless: every state is terminal; only the trees matter here.
  std::vector<std::size_t> terminals(states.size());
  for (std::size_t i = 0; i < terminals.size(); ++i) terminals[i] = i;
  std::vector<EnvGraph> graphs;
  graphs.emplace_back("mut", ScreenDims{}, std::move(states), std::vector<Edge>{}, 0, std::move(terminals));
  return GraphSet(std::move(graphs));
}

std::vector<Transition> mutated_corpus(const GraphSet& graphs, std::uint64_t seed, std::size_t n) {
  std::mt19937_64 gen(seed * 31 + 7);
  const auto& states = graphs.graphs()[0].states();
  std::vector<Transition> out;
  for (std::size_t i = 0; i < n; ++i) {
    // Few base pairs, many variants.
    const int pb = static_cast<int>(gen() % 4), qb = (pb + 1 + static_cast<int>(gen() % 2)) % 6;
    Transition t;
    t.transition_id = fmt::format("mut/w0/t{:05}", i);
    t.app_id = "mut";
    t.step_index = static_cast<int>(i);
    t.pre = states[pb * 20 + gen() % 20].state_id;
    t.post = states[qb * 20 + gen() % 20].state_id;
    t.action = Action::click({50, 60});
    t.edge_flag = EdgeFlag::kValid;
    t.source_priority = static_cast<int>(gen() % 3);
    out.push_back(std::move(t));
  }
  return out;
}

double sorted_jaccard(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

struct OracleCheck {
  bool exact = false;
  bool attributable = false;
  std::size_t borderline_pairs = 0;
  double runtime = 0.0;
};

OracleCheck structural_vs_oracle(const std::vector<Transition>& corpus, const GraphSet& graphs) {
  const StructuralParams params;
  OracleCheck out;
  const auto t0 = Clock::now();
  const auto result = dedup_structural(corpus, graphs, params);
  out.runtime = seconds_since(t0);

  const std::size_t n = corpus.size();
  std::vector<std::vector<std::uint64_t>> sets(n);
  std::vector<std::string> ids(n);
  std::vector<int> prio(n);
  for (std::size_t i = 0; i < n; ++i) {
    sets[i] = tokenize_transition(corpus[i], graphs).tokens();
    ids[i] = corpus[i].transition_id;
    prio[i] = corpus[i].source_priority;
  }
  std::vector<std::uint8_t> exact(n * n, 0), borderline(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double j = sorted_jaccard(sets[a], sets[b]);
      exact[a * n + b] = exact[b * n + a] = j >= params.jaccard_threshold;
      if (std::abs(j - params.jaccard_threshold) <= 0.05) {
        borderline[a * n + b] = borderline[b * n + a] = 1;
        ++out.borderline_pairs;
      }
    }
  }
  std::vector<std::string> got;
  for (const auto& t : result.survivors) got.push_back(t.transition_id);
  auto ids_at = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::string> v;
    for (std::size_t i : idx) v.push_back(ids[i]);
    return v;
  };
  const auto label = oracle::components(n, [&](std::size_t a, std::size_t b) { return exact[a * n + b] != 0; });
  out.exact = got == ids_at(oracle::survivors(label, ids, prio));
  if (!out.exact) {
    // Let the MinHash estimate decide only pairs within 0.05 of the threshold.
    const MinHasher hasher(params.k, params.perm_seed);
    std::vector<MinHashSignature> sig(n);
    for (std::size_t i = 0; i < n; ++i) sig[i] = hasher.sign(TokenSet(sets[i]));
    const auto tolerant = oracle::components(n, [&](std::size_t a, std::size_t b) {
      if (a == b) return false;
      if (borderline[a * n + b]) return estimate_jaccard(sig[a], sig[b]) >= params.jaccard_threshold;
      return exact[a * n + b] != 0;
    });
    out.attributable = got == ids_at(oracle::survivors(tolerant, ids, prio));
  }
  return out;
}

Outcome ac1() {
  int matched = 0, attributable = 0;
  double worst = 0.0;
  std::size_t borderline = 0, largest = 0;
  std::vector<std::string> notes;
  for (std::uint64_t c = 0; c < 20; ++c) {
    std::vector<Transition> corpus;
    GraphSet graphs;
    if (c < 10) {
      // Exploration corpora over generated apps.
      auto envs = generate_environment(100 + c, demo_spec(2 + c % 2, 30 + 5 * c, 6 + c, 0.1));
      FleetSpec fleet;
      fleet.n_workers = 10;
      fleet.budget_per_worker = 200;
      fleet.base_seed = 500 + c;
      fleet.source_priority = {{envs[0].app_id(), 1}};
      corpus = run_fleet(envs, fleet).transitions();
      graphs = GraphSet(std::move(envs));
    } else {
      graphs = mutated_graphs(c);
      corpus = mutated_corpus(graphs, c, 2000);
    }
    largest = std::max(largest, corpus.size());
    const OracleCheck r = structural_vs_oracle(corpus, graphs);
    worst = std::max(worst, r.runtime);
    borderline += r.borderline_pairs;
    if (r.exact) {
      ++matched;
    } else {
      attributable += r.attributable;
      notes.push_back(fmt::format("corpus {} differs ({})", c, r.attributable ? "near-threshold" : "UNEXPLAINED"));
    }
  }
  const bool unexplained = matched + attributable < 20;
  Outcome o;
  o.pass = matched >= 19 && !unexplained && worst < 60.0 && largest <= 2000;
  o.detail = fmt::format("{}/20 corpora match the exhaustive oracle, {} near-threshold pairs seen, "
                         "largest corpus {}, slowest {:.2f}s",
                         matched, borderline, largest, worst);
  for (const auto& n : notes) o.detail += "; " + n;
  return o;
}

// ---------- AC2 ----------

Outcome ac2() {
  std::mt19937_64 gen(77);
  const MinHasher hasher(128, 0x5eed);
  double total = 0.0;
  for (int p = 0; p < 1000; ++p) {
    const std::size_t shared = gen() % 80, only_a = 1 + gen() % 80, only_b = gen() % 80;
    std::vector<std::uint64_t> a, b;
    for (std::size_t i = 0; i < shared; ++i) {
      const auto v = gen();
      a.push_back(v);
      b.push_back(v);
    }
    for (std::size_t i = 0; i < only_a; ++i) a.push_back(gen());
    for (std::size_t i = 0; i < only_b; ++i) b.push_back(gen());
    total += std::abs(estimate_jaccard(hasher.sign(TokenSet(a)), hasher.sign(TokenSet(b))) -
                      oracle::jaccard(a, b));
  }
  const double mae = total / 1000.0;
  return {mae <= 0.05, fmt::format("mean |estimate - exact| = {:.4f} over 1000 pairs at k=128 (limit 0.05)", mae)};
}

// ---------- AC3 ----------

Outcome ac3() {
  const VisualParams params;
  int exact_sets = 0, built = 0;
  std::size_t sizes = 0;
  for (std::uint64_t seed = 1; built < 10; ++seed) {
    std::mt19937_64 gen(seed * 1009);
    std::vector<VisualFingerprint> fps;
    while (fps.size() < 1000) {
      VisualFingerprint walker{{gen(), gen(), gen(), gen()}};
      const int members = 1 + static_cast<int>(gen() % 8);
      for (int m = 0; m < members && fps.size() < 1000; ++m) {
        fps.push_back(walker);
        const int flips = static_cast<int>(gen() % 9);
        for (int f = 0; f < flips; ++f) {
          const int bit = static_cast<int>(gen() % 256);
          walker.words[bit / 64] ^= std::uint64_t{1} << (63 - bit % 64);
        }
      }
    }
    if (candidate_recall(fps, params) != 1.0) continue;  // fixture must have recall 1
    ++built;
    sizes += fps.size();
    std::vector<DedupKey> keys;
    for (std::size_t i = 0; i < fps.size(); ++i) keys.push_back({fmt::format("t{:04}", (i * 7919) % 1000), static_cast<int>(gen() % 3)});
    std::vector<std::vector<std::uint64_t>> words;
    for (const auto& f : fps) words.emplace_back(f.words.begin(), f.words.end());
    const auto label = oracle::components(fps.size(), [&](std::size_t a, std::size_t b) {
      return oracle::hamming(words[a], words[b]) <= params.theta_cluster;
    });
    const Clustering c = cluster_fingerprints(fps, keys, params);
    bool same = true;
    for (std::size_t a = 0; a < fps.size() && same; ++a) {
      for (std::size_t b = a + 1; b < fps.size() && same; ++b) {
        same = (label[a] == label[b]) == (c.representative[a] == c.representative[b]);
      }
    }
    std::vector<std::string> ids;
    std::vector<int> prio;
    for (const auto& k : keys) {
      ids.push_back(k.id);
      prio.push_back(k.priority);
    }
    same = same && c.survivors == oracle::survivors(label, ids, prio);
    exact_sets += same;
  }
  return {exact_sets == 10, fmt::format("{}/10 fixture sets ({} fingerprints total, recall 1) match "
                                        "brute-force Hamming components exactly",
                                        exact_sets, sizes)};
}

// ---------- AC4 ----------

Outcome ac4() {
  std::size_t loops = 0, dropped = 0;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto graphs = generate_environment(seed, demo_spec(3, 40, 10, 0.1));
    FleetSpec fleet;
    fleet.n_workers = 9;
    fleet.budget_per_worker = 200;
    fleet.base_seed = seed;
    const auto corpus = run_fleet(graphs, fleet).transitions();
    const GraphSet set(graphs);
    for (const auto& t : corpus) {
      if (t.edge_flag != EdgeFlag::kNoOp || t.pre != t.post) continue;
      const auto& g = set.at(t.app_id);
      if (!(g.state(g.index_of(t.pre)).raster == g.state(g.index_of(t.post)).raster)) continue;
      ++loops;
      dropped += is_static(t, set, 4);
    }
  }
  return {loops > 0 && dropped == loops,
          fmt::format("{}/{} no-op self-loops with identical rasters dropped at theta_static=4", dropped, loops)};
}

// ---------- AC5 ----------

Outcome ac5() {
  const auto graphs = generate_environment(21, demo_spec(3, 60, 12, 0.1));
  FleetSpec fleet;
  fleet.n_workers = 50;
  fleet.budget_per_worker = 400;
  fleet.base_seed = 21;
  const auto corpus = run_fleet(graphs, fleet).transitions();
  const GraphSet set(graphs);
  const SemanticResult r = filter_semantic(corpus, set, RuleVerifier{}, 4);
  std::map<EdgeFlag, std::size_t> injected, caught;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const EdgeFlag f = corpus[i].edge_flag;
    if (f != EdgeFlag::kSystemError && f != EdgeFlag::kRenderArtifact) continue;
    ++injected[f];
    caught[f] += r.verdicts[i].status == VerdictStatus::kRejected &&
                 r.verdicts[i].reason == std::string("flag_") + to_string(f);
  }
  std::size_t flag_rejects = 0;
  for (const auto& [reason, n] : r.reject_reasons) {
    if (reason == "flag_system_error" || reason == "flag_render_artifact") flag_rejects += n;
  }
  const std::size_t inj = injected[EdgeFlag::kSystemError] + injected[EdgeFlag::kRenderArtifact];
  const double recall_se = injected[EdgeFlag::kSystemError] == 0 ? 0.0
      : static_cast<double>(caught[EdgeFlag::kSystemError]) / injected[EdgeFlag::kSystemError];
  const double recall_ra = injected[EdgeFlag::kRenderArtifact] == 0 ? 0.0
      : static_cast<double>(caught[EdgeFlag::kRenderArtifact]) / injected[EdgeFlag::kRenderArtifact];
  return {recall_se == 1.0 && recall_ra == 1.0 && flag_rejects == inj && inj > 0,
          fmt::format("system_error recall {:.3f} ({}), render_artifact recall {:.3f} ({}); flag rejections {} "
                      "= injected {} of {} transitions",
                      recall_se, injected[EdgeFlag::kSystemError], recall_ra,
                      injected[EdgeFlag::kRenderArtifact], flag_rejects, inj, corpus.size())};
}

// ---------- AC6, AC7, AC8, AC11: end-to-end demo runs ----------

struct DemoRuns {
  fs::path a, b;  // workers 1 and 8
  double seconds_a = 0.0, seconds_b = 0.0;
  std::string error;
};

DemoRuns run_demo() {
  DemoRuns d;
  d.a = scratch("demo-w1");
  d.b = scratch("demo-w8");
  try {
    RunContext ctx;
    ctx.config = load_config(GUIDYN_DEMO_CONFIG);
    ctx.log = nullptr;
    ctx.out = d.b;
    ctx.workers = 8;
    auto t0 = Clock::now();
    run_all(ctx);
    d.seconds_b = seconds_since(t0);
    ctx.out = d.a;
    ctx.workers = 1;
    t0 = Clock::now();
    run_all(ctx);
    d.seconds_a = seconds_since(t0);
  } catch (const std::exception& e) {
    d.error = e.what();
  }
  return d;
}

Outcome ac6(const DemoRuns& d) {
  if (!d.error.empty()) return {false, "demo run failed: " + d.error};
  std::map<std::string, Json> manifests;
  for (const auto& s : stage_names()) manifests[s] = load_manifest(d.b, s);
  FunnelReport f;
  try {
    f = report_funnel(manifests);
  } catch (const std::exception& e) {
    return {false, std::string("funnel rejected: ") + e.what()};
  }
  std::set<std::string> survivors;
  for (const auto& l : read_shards(d.b / "filter-semantic" / "survivors", manifests["filter-semantic"]["corpus"])) {
    survivors.insert(Json::parse(l).at("transition_id").get<std::string>());
  }
  std::size_t samples = 0, orphans = 0;
  for (const auto& l : read_shards(d.b / "synth" / "samples", manifests["synth"]["samples"])) {
    ++samples;
    orphans += survivors.count(Json::parse(l).at("provenance").get<std::string>()) == 0;
  }
  std::size_t mixed_dyn = 0, mixed_orphans = 0;
  for (const auto& l : read_shards(d.b / "mix" / "corpus", manifests["mix"]["corpus"])) {
    const MixedRecord r = mixed_from_line(l);
    if (r.source != PoolKind::kDynamics) continue;
    ++mixed_dyn;
    mixed_orphans += survivors.count(r.payload.at("provenance").get<std::string>()) == 0;
  }
  const FunnelReport frozen = [] {
    FunnelReport r = funnel_from_json([] {
      Json j = Json::parse(read_file(fs::path(GUIDYN_FIXTURE_DIR) / "demo_funnel.json"));
      j["rejections"] = Json::object();
      return j;
    }());
    return r;
  }();
  const bool regression = f.raw == frozen.raw && f.post_structural == frozen.post_structural &&
                          f.post_visual == frozen.post_visual && f.post_semantic == frozen.post_semantic &&
                          f.samples_emitted == frozen.samples_emitted;
  const bool monotone = f.raw >= f.post_structural && f.post_structural >= f.post_visual &&
                        f.post_visual >= f.post_semantic;
  const double slowest = std::max(d.seconds_a, d.seconds_b);
  return {monotone && f.raw == 20000 && orphans == 0 && mixed_orphans == 0 && samples == f.samples_emitted &&
              regression && slowest < 600.0,
          fmt::format("funnel {} -> {} -> {} -> {} ({} samples, frozen fixture {}); {} orphan samples, "
                      "{} orphan mixed records of {}; run {:.1f}s",
                      f.raw, f.post_structural, f.post_visual, f.post_semantic, f.samples_emitted,
                      regression ? "matches" : "DIFFERS", orphans, mixed_orphans, mixed_dyn, slowest)};
}

Outcome ac7(const DemoRuns& d) {
  if (!d.error.empty()) return {false, "demo run failed: " + d.error};
  const Json m = load_manifest(d.b, "synth");
  std::map<std::string, std::size_t> per_kind;
  std::size_t invalid = 0, mismatched = 0, total = 0;
  for (const auto& l : read_shards(d.b / "synth" / "samples", m["samples"])) {
    ++total;
    try {
      const TrainingSample s = sample_from_json(Json::parse(l));
      validate(s);
      ++per_kind[to_string(s.task_kind)];
      mismatched += sample_to_json(s).dump() != l;
      mismatched += !(sample_from_json(Json::parse(sample_to_json(s).dump())) == s);
    } catch (const std::exception&) {
      ++invalid;
    }
  }
  bool all_kinds = true;
  std::string counts;
  for (TaskKind k : all_task_kinds()) {
    all_kinds = all_kinds && per_kind[to_string(k)] > 0;
    counts += fmt::format("{}={} ", to_string(k), per_kind[to_string(k)]);
  }
  return {all_kinds && invalid == 0 && mismatched == 0 && total > 0,
          fmt::format("{}samples; {} schema failures, {} round-trip mismatches", counts, invalid, mismatched)};
}

Outcome ac8(const DemoRuns& d) {
  if (!d.error.empty()) return {false, "demo run failed: " + d.error};
  std::vector<std::string> notes;
  bool ok = true;
  auto check = [&](const std::vector<MixedRecord>& recs, const std::string& what) {
    std::array<double, 3> c{};
    for (const auto& r : recs) c[static_cast<int>(r.source)] += 1;
    const double t = static_cast<double>(recs.size());
    const std::array<double, 3> want{0.7, 0.2, 0.1};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(c[i] / t - want[i]));
    ok = ok && t >= 1000 && worst <= 0.01;
    notes.push_back(fmt::format("{} total {} max deviation {:.4f}", what, recs.size(), worst));
  };
  const Json m = load_manifest(d.b, "mix");
  std::vector<MixedRecord> demo;
  for (const auto& l : read_shards(d.b / "mix" / "corpus", m["corpus"])) demo.push_back(mixed_from_line(l));
  check(demo, "demo corpus");
  std::vector<PoolRecord> dyn, gen, grd;
  for (int i = 0; i < 6000; ++i) dyn.push_back({"d" + std::to_string(i), i});
  for (int i = 0; i < 2000; ++i) gen.push_back({"g" + std::to_string(i), i});
  for (int i = 0; i < 1000; ++i) grd.push_back({"r" + std::to_string(i), i});
  for (std::size_t total : {1000u, 1001u, 1999u, 4321u, 8000u}) {
    MixSpec spec;
    spec.total = total;
    spec.seed = total;
    check(mix(dyn, gen, grd, spec), "synthetic pools");
  }
  std::string detail;
  for (const auto& n : notes) detail += (detail.empty() ? "" : "; ") + n;
  return {ok, detail};
}

Outcome ac11(const DemoRuns& d) {
  if (!d.error.empty()) return {false, "demo run failed: " + d.error};
  std::size_t same = 0;
  std::vector<std::string> diff;
  for (const auto& s : stage_names()) {
    if (read_file(d.a / s / "manifest.json") == read_file(d.b / s / "manifest.json")) {
      ++same;
    } else {
      diff.push_back(s);
    }
  }
  const auto digest = [](const fs::path& out) {
    const Json m = load_manifest(out, "mix");
    return shards_digest(m["corpus"]);
  };
  const bool corpus_same = digest(d.a) == digest(d.b);
  std::string detail = fmt::format("{}/{} stage manifests byte-identical at workers 1 and 8; mixed corpus digest {}",
                                   same, stage_names().size(), corpus_same ? "identical" : "DIFFERS");
  for (const auto& s : diff) detail += "; differs: " + s;
  return {same == stage_names().size() && corpus_same, detail};
}

// ---------- AC9 ----------

Outcome ac9() {
  std::size_t em = 0, tm = 0, wrong = 0;
  std::vector<EvalRecord> records;
  for (const auto& e : fixture::twelve_records()) {
    const Score s = score(e.record);
    wrong += (s.em != e.em) + (s.tm != e.tm);
    records.push_back(e.record);
  }
  const Metrics m = evaluate(records);
  for (const auto& e : fixture::twelve_records()) {
    em += e.em;
    tm += e.tm;
  }
  const bool fixture_ok = wrong == 0 && m.em == static_cast<double>(em) / 12.0 && m.tm == static_cast<double>(tm) / 12.0;

  std::mt19937_64 gen(99);
  const char* kinds[] = {"click", "input", "scroll", "finish", "wait", "press", ""};
  const char* dirs[] = {"up", "down", "left", "right", "sideways"};
  std::size_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point p{static_cast<int>(gen() % 257), static_cast<int>(gen() % 513)};
    Action gt = Action::wait();
    switch (gen() % 5) {
      case 0: gt = Action::click(p); break;
      case 1: gt = Action::input(p, "hi there"); break;
      case 2: gt = Action::scroll(p, static_cast<Direction>(gen() % 4)); break;
      case 3: gt = Action::finish(); break;
      default: break;
    }
    std::string pred = fmt::format("{} {} {}", kinds[gen() % 7], gen() % 300, gen() % 600);
    if (gen() % 2) pred += gen() % 2 ? std::string(" hi  there") : std::string(" ") + dirs[gen() % 5];
    if (gen() % 4 == 0) pred = "<think>x</think><sub_goal>y</sub_goal><answer>" + pred + "</answer>";
    std::optional<Rect> bounds;
    if (gen() % 2) bounds = Rect{std::max(0, p.x - 20), std::max(0, p.y - 20), 40, 40};
    const CoordSpace space = gen() % 2 ? CoordSpace::kAbsolute : CoordSpace::kNormalized1000;
    const Score s = score(fixture::rec(std::to_string(i), gt, bounds, pred, space));
    violations += s.em && !s.tm;
  }

  const ScreenDims dims{256, 512};
  const int bx = (dims.width + 1999) / 2000, by = (dims.height + 1999) / 2000;
  std::size_t points = 0, bad = 0;
  for (int y = 0; y <= dims.height; ++y) {
    for (int x = 0; x <= dims.width; ++x) {
      ++points;
      const Action n = convert_coords(Action::click({x, y}), CoordSpace::kAbsolute, CoordSpace::kNormalized1000, dims);
      const Point q = convert_coords(n, CoordSpace::kNormalized1000, CoordSpace::kAbsolute, dims).point();
      bad += std::abs(q.x - x) > bx || std::abs(q.y - y) > by;
    }
  }
  return {fixture_ok && violations == 0 && bad == 0,
          fmt::format("12-record fixture em={:.4f} tm={:.4f} ({} mismatches); {} em>tm violations in 10000 "
                      "fuzzed records; {}/{} round-trip points beyond {}x{} px",
                      m.em, m.tm, wrong, violations, bad, points, bx, by)};
}

// ---------- AC10 ----------

Outcome ac10() {
  std::size_t items = 0, replayed = 0;
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    for (const auto& g : generate_environment(seed, demo_spec(3, 60, 12, 0.1))) {
      for (GenTask task : {GenTask::kForward, GenTask::kInverse}) {
        for (const auto& item : build_generalization_items(g, GenLevel::kL2, task, 40, seed * 7 + static_cast<int>(task))) {
          ++items;
          bool ok = item.actions.size() == 2 && item.path.size() == 3;
          std::size_t s = g.index_of(item.path.front());
          for (std::size_t k = 0; ok && k < item.actions.size(); ++k) {
            const StepOutcome out = step(g, s, item.actions[k]);
            ok = out.flag == EdgeFlag::kValid && g.state(out.next_state).state_id == item.path[k + 1];
            s = out.next_state;
          }
          replayed += ok && g.state(s).state_id == item.target_state();
        }
      }
    }
  }
  return {items > 0 && replayed == items,
          fmt::format("{}/{} L2 items reach their recorded target in two step() calls", replayed, items)};
}

// ---------- AC12 ----------

Outcome ac12() {
  std::size_t right = 0, total = 0;
  std::vector<std::string> wrong;
  for (const auto& c : fixture::judge_cases()) {
    ++total;
    const std::string text = "<reason>r</reason><score>" + c.score_text + "</score>";
    bool accepted = false;
    double value = -1.0;
    try {
      value = parse_judge_verdict(text, c.task).score;
      accepted = true;
    } catch (const DataError&) {
    }
    const bool ok = accepted == c.accept && (!accepted || std::abs(value - c.value) < 1e-12);
    right += ok;
    if (!ok) wrong.push_back(c.score_text);
  }
  std::string detail = fmt::format("{}/{} judge cases classified as expected", right, total);
  for (const auto& w : wrong) detail += "; wrong on '" + w + "'";
  return {total == 50 && right == total, detail};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
  DemoRuns demo;
  bool demo_done = false;
  auto with_demo = [&](Outcome (*fn)(const DemoRuns&)) {
    return [&, fn] {
      if (!demo_done) {
        demo = run_demo();
        demo_done = true;
      }
      return fn(demo);
    };
  };
  criteria.emplace_back("AC1 structural dedup matches the exhaustive oracle", ac1);
  criteria.emplace_back("AC2 MinHash accuracy", ac2);
  criteria.emplace_back("AC3 visual dedup matches brute-force components", ac3);
  criteria.emplace_back("AC4 static transitions removed", ac4);
  criteria.emplace_back("AC5 semantic filter flag recall", ac5);
  criteria.emplace_back("AC6 funnel monotonicity and provenance closure", with_demo(ac6));
  criteria.emplace_back("AC7 all seven task kinds valid and round-trip", with_demo(ac7));
  criteria.emplace_back("AC8 mix ratios", with_demo(ac8));
  criteria.emplace_back("AC9 EM/TM correctness", ac9);
  criteria.emplace_back("AC10 L2 items replay", ac10);
  criteria.emplace_back("AC11 determinism across worker counts", with_demo(ac11));
  criteria.emplace_back("AC12 judge score sets", ac12);

  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    fmt::print("[{}] {} ({:.1f}s): {}\n", o.pass ? "PASS" : "FAIL", name, seconds_since(t0), o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
