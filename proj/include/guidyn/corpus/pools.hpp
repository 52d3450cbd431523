#pragma once

#include <cstdint>
#include <vector>

#include "guidyn/corpus/mix.hpp"
#include "guidyn/env/graph.hpp"

namespace guidyn {

// Stand-ins for external general multimodal and grounding datasets. Each pool is
// deterministic in (size, seed) and names itself for the manifest.
inline constexpr const char* kGeneralPoolName = "synthetic-arithmetic-qa";
inline constexpr const char* kGroundingPoolName = "synthetic-element-grounding";

std::vector<PoolRecord> general_pool(std::size_t size, std::uint64_t seed);

// Instructions to locate a labelled interactive element, answered with a click on its
// center. Throws DataError when the graphs hold no labelled interactive element.
std::vector<PoolRecord> grounding_pool(const std::vector<EnvGraph>& graphs, std::size_t size,
                                       std::uint64_t seed);

// Pool records for dynamics samples, keyed by sample id.
std::vector<PoolRecord> dynamics_pool(const std::vector<Json>& samples);

}  // namespace guidyn
