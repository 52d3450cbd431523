#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "guidyn/env/serialize.hpp"

namespace guidyn {

enum class PoolKind { kDynamics, kGeneral, kGrounding };

std::string to_string(PoolKind k);
PoolKind pool_kind_from_string(std::string_view s);

// One record of a source pool; `payload` is the source-specific document.
struct PoolRecord {
  std::string id;
  Json payload;

  friend bool operator==(const PoolRecord&, const PoolRecord&) = default;
};

struct MixedRecord {
  PoolKind source = PoolKind::kDynamics;
  std::string id;
  Json payload;

  friend bool operator==(const MixedRecord&, const MixedRecord&) = default;
};

struct MixSpec {
  double ratio_dynamics = 0.70;
  double ratio_general = 0.20;
  double ratio_grounding = 0.10;
  std::size_t total = 1000;
  std::uint64_t seed = 0;
};

// Throws ConfigError unless the ratios are in [0, 1] and sum to 1 within 1e-9.
void validate(const MixSpec& spec);

// Largest-remainder apportionment of spec.total; ties go to the earlier pool.
std::array<std::size_t, 3> apportion(const MixSpec& spec);

// Seeded selection without replacement from each pool, then one seeded global shuffle.
// Throws DataError when a pool is smaller than its apportioned count.
std::vector<MixedRecord> mix(const std::vector<PoolRecord>& dynamics,
                             const std::vector<PoolRecord>& general,
                             const std::vector<PoolRecord>& grounding, const MixSpec& spec);

// Largest total whose apportioned counts fit the pool sizes.
std::size_t max_feasible_total(const MixSpec& spec, std::array<std::size_t, 3> pool_sizes);

std::string mixed_to_line(const MixedRecord& r);
MixedRecord mixed_from_line(const std::string& line);

}  // namespace guidyn
