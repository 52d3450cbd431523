#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "../support/oracles.hpp"
#include "guidyn/common/errors.hpp"
#include "guidyn/dedup/structural.hpp"
#include "guidyn/env/generator.hpp"
#include "guidyn/explore/explorer.hpp"

using namespace guidyn;
using namespace guidyn::testing;

namespace {

TokenSet tokens(std::initializer_list<std::uint64_t> v) { return TokenSet(std::vector(v)); }

// Same skeleton, different text for every index.
UiState templated(const std::string& id, const std::string& tpl, int variant) {
  const std::string suffix(1, static_cast<char>('a' + variant % 26));
  return make_state(id, tpl, "Shop " + suffix,
                    {make_node("n2", "button", "/body/button[1]", "Buy " + suffix,
                               {16, 100, 100, 40}, clickable()),
                     make_node("n3", "input", "/body/input[1]", "Name " + suffix,
                               {16, 160, 200, 40}, editable()),
                     make_node("n4", "list", "/body/list[1]", "Items " + suffix,
                               {16, 220, 224, 200}, scrollable())});
}

// A state of its own template with `extra` distinct-xpath nodes.
UiState unrelated(const std::string& id, int index) {
  std::vector<AxNode> nodes;
  const std::string tag = index % 2 ? "image" : "text";
  for (int i = 0; i < 4 + index; ++i) {
    nodes.push_back(make_node("n" + std::to_string(i + 2), tag,
                              "/sec" + std::to_string(index) + "/" + tag + "[" +
                                  std::to_string(i + 1) + "]",
                              "Item", {16, 60 + 30 * i, 200, 24}));
  }
  return make_state(id, "solo-" + std::to_string(index), "Solo", std::move(nodes));
}

Transition make_t(const std::string& id, const std::string& app, const std::string& pre,
                  const std::string& post, int priority = 0) {
  Transition t;
  t.transition_id = id;
  t.app_id = app;
  t.pre = pre;
  t.post = post;
  t.action = Action::click({50, 50});
  t.edge_flag = EdgeFlag::kValid;
  t.source_priority = priority;
  return t;
}

// Ten states of template "shop" and five unrelated single-template states.
GraphSet copies_fixture() {
  std::vector<UiState> states;
  std::vector<std::size_t> terminals;
  for (int i = 0; i < 10; ++i) states.push_back(templated("c" + std::to_string(i), "shop", i));
  for (int i = 0; i < 5; ++i) states.push_back(unrelated("u" + std::to_string(i), i));
  for (std::size_t i = 0; i < states.size(); ++i) terminals.push_back(i);
  std::vector<EnvGraph> graphs;
  graphs.emplace_back("fx", ScreenDims{}, std::move(states), std::vector<Edge>{}, 0, terminals);
  return GraphSet(std::move(graphs));
}

std::vector<Transition> copies_corpus() {
  std::vector<Transition> corpus;
  for (int i = 0; i < 10; ++i) {
    corpus.push_back(make_t("fx/c" + std::to_string(i), "fx", "c" + std::to_string(i),
                            "c" + std::to_string((i + 1) % 10)));
  }
  for (int i = 0; i < 5; ++i) {
    const std::string s = "u" + std::to_string(i);
    corpus.push_back(make_t("fx/u" + std::to_string(i), "fx", s, s));
  }
  return corpus;
}

std::vector<std::size_t> oracle_survivors(const std::vector<Transition>& corpus,
                                          const GraphSet& graphs, double threshold) {
  std::vector<std::vector<std::uint64_t>> sets;
  std::vector<std::string> ids;
  std::vector<int> prio;
  for (const auto& t : corpus) {
    sets.push_back(tokenize_transition(t, graphs).tokens());
    ids.push_back(t.transition_id);
    prio.push_back(t.source_priority);
  }
  return oracle::jaccard_survivors(sets, ids, prio, threshold);
}

std::vector<std::string> ids_of(const std::vector<Transition>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.transition_id);
  return out;
}

std::vector<std::string> ids_at(const std::vector<Transition>& ts,
                                const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(ts[i].transition_id);
  return out;
}

}  // namespace

TEST_CASE("minhash: equal sets give equal signatures and estimate 1") {
  const auto a = minhash(tokens({1, 2, 3, 4}), 128, 7);
  const auto b = minhash(tokens({4, 3, 2, 1, 1}), 128, 7);
  CHECK(a == b);
  CHECK(estimate_jaccard(a, a) == 1.0);
}

TEST_CASE("minhash: three shared of five union tokens") {
  const TokenSet a = tokens({11, 22, 33, 44});
  const TokenSet b = tokens({22, 33, 44, 55});
  CHECK(oracle::jaccard(a.tokens(), b.tokens()) == doctest::Approx(0.6));
  CHECK(exact_jaccard(a, b) == doctest::Approx(0.6));
  const double est = estimate_jaccard(minhash(a, 128, 99), minhash(b, 128, 99));
  CHECK(std::abs(est - 0.6) <= 0.15);
}

TEST_CASE("minhash: disjoint sets estimate near zero") {
  std::vector<std::uint64_t> x, y;
  for (std::uint64_t i = 0; i < 50; ++i) {
    x.push_back(mix64(i));
    y.push_back(mix64(i + 1000));
  }
  const double est = estimate_jaccard(minhash(TokenSet(x), 128, 3), minhash(TokenSet(y), 128, 3));
  CHECK(est <= 0.1);
}

TEST_CASE("minhash: mean absolute error over 1000 random pairs") {
  std::mt19937_64 gen(2024);
  const MinHasher hasher(128, 0x5eed);
  double total = 0.0;
  for (int p = 0; p < 1000; ++p) {
    const std::size_t shared = gen() % 60;
    const std::size_t only_a = gen() % 60 + 1;
    const std::size_t only_b = gen() % 60;
    std::vector<std::uint64_t> a, b;
    for (std::size_t i = 0; i < shared; ++i) {
      const std::uint64_t v = gen();
      a.push_back(v);
      b.push_back(v);
    }
    for (std::size_t i = 0; i < only_a; ++i) a.push_back(gen());
    for (std::size_t i = 0; i < only_b; ++i) b.push_back(gen());
    const double exact = oracle::jaccard(a, b);
    const double est = estimate_jaccard(hasher.sign(TokenSet(a)), hasher.sign(TokenSet(b)));
    total += std::abs(est - exact);
  }
  CHECK(total / 1000.0 <= 0.05);
}

TEST_CASE("minhash: errors") {
  CHECK_THROWS_AS(minhash(TokenSet{}, 128, 1), DataError);
  CHECK_THROWS_AS(minhash(tokens({1}), 0, 1), ConfigError);
  const auto a = minhash(tokens({1, 2}), 64, 1);
  CHECK_THROWS_AS(estimate_jaccard(a, minhash(tokens({1, 2}), 128, 1)), DataError);
  CHECK_THROWS_AS(estimate_jaccard(a, minhash(tokens({1, 2}), 64, 2)), DataError);
}

TEST_CASE("minhash: values are below the prime and deterministic") {
  const auto a = minhash(tokens({5, 6, 7, ~std::uint64_t{0}}), 32, 12);
  for (auto v : a.values) CHECK(v < MinHasher::kPrime);
  CHECK(a == minhash(tokens({5, 6, 7, ~std::uint64_t{0}}), 32, 12));
}

TEST_CASE("tokenize: text is excluded and roles are tagged") {
  const GraphSet graphs = copies_fixture();
  const auto a = tokenize_transition(make_t("x", "fx", "c0", "c1"), graphs);
  const auto b = tokenize_transition(make_t("y", "fx", "c3", "c7"), graphs);
  CHECK(a == b);
  CHECK(exact_jaccard(a, a) == 1.0);
  CHECK_FALSE(a.empty());
  const auto c = tokenize_transition(make_t("z", "fx", "u0", "c0"), graphs);
  CHECK(exact_jaccard(a, c) < 1.0);
  const auto swapped = tokenize_transition(make_t("w", "fx", "c0", "u0"), graphs);
  CHECK_FALSE(swapped == c);
}

TEST_CASE("tokenize: unrelated templates have low exact similarity") {
  const GraphSet graphs = copies_fixture();
  for (int i = 0; i < 5; ++i) {
    const std::string s = "u" + std::to_string(i);
    const auto u = tokenize_transition(make_t("a", "fx", s, s), graphs);
    const auto c = tokenize_transition(make_t("b", "fx", "c0", "c1"), graphs);
    CHECK(oracle::jaccard(u.tokens(), c.tokens()) < 0.3);
  }
  CHECK_THROWS(tokenize_transition(make_t("a", "fx", "nope", "c0"), graphs));
  CHECK_THROWS(tokenize_transition(make_t("a", "other", "c0", "c0"), graphs));
}

TEST_CASE("lsh index: insertion order does not change candidate pairs") {
  const MinHasher hasher(128, 1);
  std::vector<MinHashSignature> sigs;
  std::mt19937_64 gen(5);
  std::vector<std::uint64_t> base;
  for (int i = 0; i < 40; ++i) base.push_back(gen());
  for (int s = 0; s < 30; ++s) {
    auto v = base;
    for (int i = 0; i < s % 7; ++i) v[gen() % v.size()] = gen();
    sigs.push_back(hasher.sign(TokenSet(v)));
  }
  LshIndex forward(32, 4), backward(32, 4);
  for (std::size_t i = 0; i < sigs.size(); ++i) forward.insert(i, sigs[i]);
  for (std::size_t i = sigs.size(); i-- > 0;) backward.insert(i, sigs[i]);
  CHECK(forward.candidate_pairs() == backward.candidate_pairs());
  CHECK_FALSE(forward.candidate_pairs().empty());
  CHECK_THROWS_AS(forward.insert(99, minhash(TokenSet(base), 64, 1)), DataError);
}

TEST_CASE("dedup: validation") {
  StructuralParams p;
  CHECK_NOTHROW(validate(p));
  p.bands = 30;
  CHECK_THROWS_AS(validate(p), ConfigError);
  p = {};
  p.jaccard_threshold = 0.0;
  CHECK_THROWS_AS(validate(p), ConfigError);
  p.jaccard_threshold = 1.5;
  CHECK_THROWS_AS(validate(p), ConfigError);
}

TEST_CASE("dedup: ten copies plus five singletons leave six survivors") {
  const GraphSet graphs = copies_fixture();
  const auto corpus = copies_corpus();
  const auto expected = oracle_survivors(corpus, graphs, 0.85);
  CHECK(expected.size() == 6);
  const auto result = dedup_structural(corpus, graphs, {});
  CHECK(result.survivors.size() == 6);
  CHECK(ids_of(result.survivors) == ids_at(corpus, expected));
  CHECK(result.survivors.front().transition_id == "fx/c0");
  REQUIRE(result.clusters.size() == corpus.size());
  for (int i = 0; i < 10; ++i) CHECK(result.clusters[i].second == "fx/c0");
  for (int i = 10; i < 15; ++i) CHECK(result.clusters[i].first == result.clusters[i].second);
}

TEST_CASE("dedup: representative prefers priority then smallest id") {
  const GraphSet graphs = copies_fixture();
  auto corpus = copies_corpus();
  corpus[6].source_priority = 2;
  corpus[3].source_priority = 2;
  const auto result = dedup_structural(corpus, graphs, {});
  CHECK(result.survivors.front().transition_id == "fx/c3");
  CHECK(result.clusters[0].second == "fx/c3");
}

TEST_CASE("dedup: corpus without near duplicates is unchanged") {
  const GraphSet graphs = copies_fixture();
  std::vector<Transition> corpus;
  for (int i = 0; i < 5; ++i) {
    const std::string s = "u" + std::to_string(i);
    corpus.push_back(make_t("fx/u" + std::to_string(i), "fx", s, s));
  }
  corpus.push_back(make_t("fx/c0", "fx", "c0", "c1"));
  CHECK(dedup_structural(corpus, graphs, {}).survivors == corpus);
  CHECK(dedup_structural({}, graphs, {}).survivors.empty());
}

TEST_CASE("dedup: matches the exhaustive oracle on generated corpora") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto graphs = generate_environment(seed, demo_spec(2, 30, 8, 0.1));
    FleetSpec fleet;
    fleet.n_workers = 6;
    fleet.budget_per_worker = 80;
    fleet.base_seed = seed;
    fleet.source_priority = {{graphs[0].app_id(), 1}};
    const auto corpus = run_fleet(graphs, fleet).transitions();
    const GraphSet set(graphs);
    const auto result = dedup_structural(corpus, set, {});
    CHECK(ids_of(result.survivors) == ids_at(corpus, oracle_survivors(corpus, set, 0.85)));
    CHECK(result.survivors.size() < corpus.size());

    // Idempotence.
    CHECK(dedup_structural(result.survivors, set, {}).survivors == result.survivors);

    // Shard ordering does not change the surviving set.
    auto shuffled = corpus;
    std::mt19937_64 gen(seed);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    auto a = ids_of(dedup_structural(shuffled, set, {}, 3).survivors);
    auto b = ids_of(result.survivors);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}
