#include <atomic>
#include <mutex>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "../support/stub_server.hpp"
#include "guidyn/common/errors.hpp"
#include "guidyn/dedup/structural.hpp"
#include "guidyn/dedup/visual.hpp"
#include "guidyn/env/coords.hpp"
#include "guidyn/explore/explorer.hpp"
#include "guidyn/filter/semantic.hpp"

using namespace guidyn;
using namespace guidyn::testing;

namespace {

struct ChainFixture {
  GraphSet graphs;
  std::vector<Transition> corpus;
};

Transition chain_t(const std::string& id, const std::string& pre, const std::string& post,
                   Action a, EdgeFlag flag) {
  Transition t;
  t.transition_id = id;
  t.app_id = "chain";
  t.pre = pre;
  t.post = post;
  t.action = std::move(a);
  t.edge_flag = flag;
  return t;
}

ChainFixture chain_fixture() {
  std::vector<EnvGraph> gs{make_chain(4)};
  ChainFixture f{GraphSet(std::move(gs)), {}};
  f.corpus.push_back(chain_t("chain/w0000/t000000", "s0", "s1", Action::click({150, 300}), EdgeFlag::kValid));
  f.corpus.push_back(chain_t("chain/w0000/t000001", "s1", "s2", Action::click({150, 300}), EdgeFlag::kSystemError));
  f.corpus.push_back(chain_t("chain/w0000/t000002", "s2", "s3", Action::click({150, 300}), EdgeFlag::kRenderArtifact));
  f.corpus.push_back(chain_t("chain/w0000/t000003", "s3", "s3", Action::click({10, 500}), EdgeFlag::kNoOp));
  return f;
}

RemoteConfig fast_config(const std::string& url) {
  RemoteConfig c;
  c.url = url;
  c.max_retries = 2;
  c.backoff_ms = 1;
  c.timeout_ms = 2000;
  c.max_in_flight = 3;
  return c;
}

}  // namespace

TEST_CASE("rule verifier: flags, targets and state change") {
  const auto f = chain_fixture();
  const RuleVerifier rule;
  const auto v0 = rule.verify(f.corpus[0], f.graphs);
  CHECK(v0.valid);
  CHECK(v0.status == VerdictStatus::kAccepted);
  CHECK_FALSE(rule.verify(f.corpus[1], f.graphs).valid);
  CHECK(rule.verify(f.corpus[1], f.graphs).reason == "flag_system_error");
  CHECK(rule.verify(f.corpus[2], f.graphs).reason == "flag_render_artifact");
  CHECK(rule.verify(f.corpus[3], f.graphs).status == VerdictStatus::kRejected);

  // A valid flag whose point misses any clickable node, and one without a state change.
  auto miss = f.corpus[0];
  miss.action = Action::click({5, 505});
  CHECK(rule.verify(miss, f.graphs).reason == "event_not_permitted");
  auto wrong_kind = f.corpus[0];
  wrong_kind.action = Action::scroll({150, 300}, Direction::kDown);
  CHECK(rule.verify(wrong_kind, f.graphs).reason == "event_not_permitted");
  auto same = f.corpus[0];
  same.post = "s0";
  CHECK(rule.verify(same, f.graphs).reason == "no_state_change");
  auto normalized = f.corpus[0];
  normalized.action = convert_coords(normalized.action, CoordSpace::kAbsolute,
                                     CoordSpace::kNormalized1000, ScreenDims{});
  CHECK(rule.verify(normalized, f.graphs).valid);
  auto missing = f.corpus[0];
  missing.pre = "zz";
  CHECK_THROWS(rule.verify(missing, f.graphs));
}

TEST_CASE("filter_semantic: totality and counts") {
  const auto f = chain_fixture();
  const auto r = filter_semantic(f.corpus, f.graphs, RuleVerifier{}, 4);
  CHECK(r.verdicts.size() == f.corpus.size());
  CHECK(r.survivors.size() == 1);
  CHECK(r.accepted == 1);
  CHECK(r.rejected == 3);
  CHECK(r.quarantined.empty());
  CHECK(r.reject_reasons.at("flag_system_error") == 1);
  for (const auto& v : r.verdicts) CHECK(verdict_from_json(verdict_to_json(v)) == v);
}

TEST_CASE("filter_semantic: rejections equal injected faults after dedup stages") {
  const auto graphs = generate_environment(21, demo_spec(3, 40, 14, 0.1));
  FleetSpec fleet;
  fleet.n_workers = 9;
  fleet.budget_per_worker = 300;
  fleet.base_seed = 21;
  const auto raw = run_fleet(graphs, fleet).transitions();
  const GraphSet set(graphs);
  const auto s1 = dedup_structural(raw, set, {}).survivors;
  const auto s2 = dedup_visual(s1, set, {}).survivors;
  const auto r = filter_semantic(s2, set, RuleVerifier{});
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < s2.size(); ++i) {
    const bool fault = s2[i].edge_flag == EdgeFlag::kSystemError ||
                       s2[i].edge_flag == EdgeFlag::kRenderArtifact;
    flagged += fault;
    if (fault) CHECK_FALSE(r.verdicts[i].valid);
  }
  REQUIRE(s2.size() > 0);
  CHECK(flagged > 0);
  const double rejected = static_cast<double>(r.rejected) / static_cast<double>(s2.size());
  CHECK(std::abs(rejected - static_cast<double>(flagged) / static_cast<double>(s2.size())) <= 0.02);
}

TEST_CASE("remote verifier: request contract and acceptance") {
  const auto f = chain_fixture();
  std::mutex mu;
  std::set<std::string> keys;
  std::atomic<int> calls{0};
  StubServer stub([&](const httplib::Request& req, httplib::Response& res) {
    ++calls;
    const auto doc = nlohmann::ordered_json::parse(req.body);
    CHECK(req.get_header_value("Authorization") == "Bearer secret");
    {
      std::lock_guard lock(mu);
      keys.insert(req.get_header_value("Idempotency-Key"));
    }
    CHECK(doc.at("images").size() == 2);
    CHECK(doc.at("images")[0].at("encoding") == "gray8");
    CHECK(doc.at("prompt").at("user").get<std::string>().find("The action was: click") !=
          std::string::npos);
    reply_output(res, "<reason>fine</reason><score>1</score>");
  });
  auto cfg = fast_config(stub.url());
  cfg.token = "secret";
  const auto r = filter_semantic(f.corpus, f.graphs, RemoteVerifier(cfg), 8);
  CHECK(r.accepted == f.corpus.size());
  CHECK(calls == static_cast<int>(f.corpus.size()));
  CHECK(keys.size() == f.corpus.size());
  CHECK(keys.count(f.corpus[0].transition_id) == 1);
  const auto req = semantic_request(f.corpus[0], f.graphs);
  CHECK(req.at("request_id") == f.corpus[0].transition_id);
  CHECK(req.at("images")[0].at("width") == 256);
}

TEST_CASE("remote verifier: echoing ground truth matches the rule oracle") {
  const auto f = chain_fixture();
  const RuleVerifier rule;
  std::map<std::string, bool> truth;
  for (const auto& t : f.corpus) truth[t.transition_id] = rule.verify(t, f.graphs).valid;
  StubServer stub([&](const httplib::Request& req, httplib::Response& res) {
    const bool ok = truth.at(req.get_header_value("Idempotency-Key"));
    reply_output(res, std::string("<score>") + (ok ? "1" : "0") + "</score>");
  });
  const auto remote = filter_semantic(f.corpus, f.graphs, RemoteVerifier(fast_config(stub.url())));
  const auto local = filter_semantic(f.corpus, f.graphs, rule);
  REQUIRE(remote.verdicts.size() == local.verdicts.size());
  for (std::size_t i = 0; i < local.verdicts.size(); ++i) {
    CHECK(remote.verdicts[i].valid == local.verdicts[i].valid);
    CHECK(remote.verdicts[i].status == local.verdicts[i].status);
  }
  CHECK(remote.survivors == local.survivors);
}

TEST_CASE("remote verifier: malformed replies are quarantined, not rejected") {
  const auto f = chain_fixture();
  for (const std::string body : {"not json", "{\"output\": 3}", "{\"output\": \"<score>2</score>\"}",
                                 "{\"output\": \"score 1\"}",
                                 "{\"output\": \"<score>1</score><score>1</score>\"}"}) {
    StubServer stub([&](const httplib::Request&, httplib::Response& res) {
      res.set_content(body, "application/json");
    });
    const auto r = filter_semantic(f.corpus, f.graphs, RemoteVerifier(fast_config(stub.url())));
    CHECK(r.malformed == f.corpus.size());
    CHECK(r.rejected == 0);
    CHECK(r.survivors.empty());
    CHECK(r.quarantined == f.corpus);
  }
}

TEST_CASE("remote verifier: retries transient failures then fails closed") {
  const auto f = chain_fixture();
  std::atomic<int> calls{0};
  StubServer flaky([&](const httplib::Request&, httplib::Response& res) {
    if (++calls % 3 != 0) {
      res.status = 503;
      return;
    }
    reply_output(res, "<score>1</score>");
  });
  const std::vector<Transition> one{f.corpus[0]};
  const auto ok = filter_semantic(one, f.graphs, RemoteVerifier(fast_config(flaky.url())));
  CHECK(ok.accepted == 1);
  CHECK(calls == 3);

  std::atomic<int> down_calls{0};
  StubServer down([&](const httplib::Request&, httplib::Response& res) {
    ++down_calls;
    res.status = 500;
  });
  const auto r = filter_semantic(one, f.graphs, RemoteVerifier(fast_config(down.url())));
  CHECK(r.unavailable == 1);
  CHECK(r.rejected == 0);
  CHECK(r.quarantined.size() == 1);
  CHECK(r.verdicts[0].reason == "verifier_unavailable");
  CHECK(down_calls == 3);

  std::atomic<int> denied_calls{0};
  StubServer denied([&](const httplib::Request&, httplib::Response& res) {
    ++denied_calls;
    res.status = 401;
  });
  CHECK(filter_semantic(one, f.graphs, RemoteVerifier(fast_config(denied.url()))).unavailable == 1);
  CHECK(denied_calls == 1);
}

TEST_CASE("remote config validation and environment") {
  CHECK_THROWS_AS(RemoteVerifier(fast_config("ftp://x")), ConfigError);
  auto c = fast_config("http://127.0.0.1:1/x");
  c.max_in_flight = 0;
  CHECK_THROWS_AS(RemoteVerifier{c}, ConfigError);
  ::unsetenv("GUIDYN_TEST_URL");
  CHECK_THROWS_AS(remote_config_from_env({}, "GUIDYN_TEST_URL", "GUIDYN_TEST_TOKEN"), ConfigError);
  ::setenv("GUIDYN_TEST_URL", "http://localhost:9/v", 1);
  ::setenv("GUIDYN_TEST_TOKEN", "t", 1);
  const auto e = remote_config_from_env({}, "GUIDYN_TEST_URL", "GUIDYN_TEST_TOKEN");
  CHECK(e.url == "http://localhost:9/v");
  CHECK(e.token == "t");
}

TEST_CASE("parse_semantic_output") {
  CHECK(parse_semantic_output("<score>1</score>")->first);
  CHECK_FALSE(parse_semantic_output("<reason>bad</reason><score> 0 </score>")->first);
  CHECK(parse_semantic_output("<reason>bad</reason><score>0</score>")->second == "bad");
  CHECK_FALSE(parse_semantic_output("<score>yes</score>"));
  CHECK_FALSE(parse_semantic_output("<reason>a<score>1</score>"));
  CHECK_FALSE(parse_semantic_output(""));
}
