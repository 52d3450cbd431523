#include "guidyn/corpus/pools.hpp"

#include <fmt/format.h>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/rng.hpp"
#include "guidyn/synth/samples.hpp"

namespace guidyn {

std::vector<PoolRecord> general_pool(std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PoolRecord> pool;
  pool.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const int a = rng.between(2, 99);
    const int b = rng.between(2, 99);
    std::string question, answer;
    switch (rng.below(3)) {
      case 0:
        question = fmt::format("What is {} + {}?", a, b);
        answer = std::to_string(a + b);
        break;
      case 1:
        question = fmt::format("What is {} times {}?", a, b);
        answer = std::to_string(a * b);
        break;
      default:
        question = fmt::format("Which is larger, {} or {}?", a, b);
        answer = std::to_string(std::max(a, b));
        break;
    }
    Json p;
    p["task"] = "general_qa";
    p["question"] = question;
    p["answer"] = answer;
    pool.push_back({fmt::format("general/{:06}", i), std::move(p)});
  }
  return pool;
}

std::vector<PoolRecord> grounding_pool(const std::vector<EnvGraph>& graphs, std::size_t size,
                                       std::uint64_t seed) {
  struct Site {
    const EnvGraph* graph;
    const UiState* state;
    const AxNode* node;
  };
  std::vector<Site> sites;
  for (const auto& g : graphs) {
    for (const auto& s : g.states()) {
      for (const auto& n : s.tree) {
        if (!n.text.empty() && !n.events.empty() && n.bounds.area() > 0) sites.push_back({&g, &s, &n});
      }
    }
  }
  if (size > 0 && sites.empty()) throw DataError("no labelled interactive elements for grounding");
  Rng rng(seed);
  std::vector<PoolRecord> pool;
  pool.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const Site& site = rng.pick(sites);
    const Point c = site.node->bounds.center();
    Json p;
    p["task"] = "grounding";
    p["image"] = image_ref(site.graph->app_id(), site.state->state_id);
    p["instruction"] = fmt::format("Locate the \"{}\" {}.", site.node->text, site.node->tag);
    p["answer"] = fmt::format("click {} {}", c.x, c.y);
    pool.push_back({fmt::format("grounding/{:06}", i), std::move(p)});
  }
  return pool;
}

std::vector<PoolRecord> dynamics_pool(const std::vector<Json>& samples) {
  std::vector<PoolRecord> pool;
  pool.reserve(samples.size());
  for (const auto& s : samples) {
    try {
      pool.push_back({s.at("sample_id").get<std::string>(), s});
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("malformed dynamics sample: ") + e.what());
    }
  }
  return pool;
}

}  // namespace guidyn
