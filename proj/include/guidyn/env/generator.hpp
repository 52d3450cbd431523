#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guidyn/env/graph.hpp"
#include "guidyn/env/types.hpp"

namespace guidyn {

struct GenerationSpec {
  int n_apps = 1;
  int states_per_app = 2;
  int templates_per_app = 1;
  double fault_rate = 0.0;
  // Probability that an affordance beyond the first leads somewhere; the rest stay inert.
  double edge_density = 0.6;
  // Fraction of non-entry states declared terminal (no outgoing edges).
  double terminal_fraction = 0.0;
  ScreenDims dims{};
};

// Throws ConfigError when the spec violates its preconditions.
void validate(const GenerationSpec& spec);

// Deterministic in (seed, spec). Apps are independent and may be built in parallel.
std::vector<EnvGraph> generate_environment(std::uint64_t seed, const GenerationSpec& spec,
                                           std::size_t workers = 1);

EnvGraph generate_app(std::uint64_t seed, const GenerationSpec& spec, int app_index);

std::string app_id_for(int app_index);

// Ground-truth one-line description built from the template title and salient texts.
std::string describe_state(const std::string& title, const std::vector<AxNode>& tree);

// Non-empty node texts ranked by node area (desc), then document order; skips the root.
std::vector<std::string> salient_texts(const std::vector<AxNode>& tree, std::size_t limit);

}  // namespace guidyn
