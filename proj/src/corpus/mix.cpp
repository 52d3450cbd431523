#include "guidyn/corpus/mix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/rng.hpp"

namespace guidyn {

std::string to_string(PoolKind k) {
  switch (k) {
    case PoolKind::kDynamics: return "dynamics";
    case PoolKind::kGeneral: return "general";
    case PoolKind::kGrounding: return "grounding";
  }
  return "dynamics";
}

PoolKind pool_kind_from_string(std::string_view s) {
  if (s == "dynamics") return PoolKind::kDynamics;
  if (s == "general") return PoolKind::kGeneral;
  if (s == "grounding") return PoolKind::kGrounding;
  throw DataError("unknown pool kind: " + std::string(s));
}

void validate(const MixSpec& spec) {
  const std::array<double, 3> r{spec.ratio_dynamics, spec.ratio_general, spec.ratio_grounding};
  for (double x : r) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("mix ratios must lie in [0, 1]");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) throw ConfigError("mix ratios must sum to 1");
}

std::array<std::size_t, 3> apportion(const MixSpec& spec) {
  validate(spec);
  const std::array<double, 3> r{spec.ratio_dynamics, spec.ratio_general, spec.ratio_grounding};
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> rem{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double quota = r[i] * static_cast<double>(spec.total);
    // Guard against 0.7 * 1000 landing a hair below 700.
    const double fl = std::floor(quota + 1e-9);
    counts[i] = static_cast<std::size_t>(fl);
    rem[i] = std::max(0.0, quota - fl);
    assigned += counts[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t k = 0; assigned < spec.total; ++k, ++assigned) ++counts[order[k % 3]];
  while (assigned > spec.total) {
    // Only reachable through the epsilon guard; take back from the largest count.
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --assigned;
  }
  return counts;
}

std::vector<MixedRecord> mix(const std::vector<PoolRecord>& dynamics,
                             const std::vector<PoolRecord>& general,
                             const std::vector<PoolRecord>& grounding, const MixSpec& spec) {
  const auto counts = apportion(spec);
  const std::array<const std::vector<PoolRecord>*, 3> pools{&dynamics, &general, &grounding};
  std::vector<MixedRecord> out;
  out.reserve(spec.total);
  for (std::size_t p = 0; p < 3; ++p) {
    const auto& pool = *pools[p];
    if (pool.size() < counts[p]) {
      throw DataError(to_string(static_cast<PoolKind>(p)) + " pool has " +
                      std::to_string(pool.size()) + " records, mix needs " +
                      std::to_string(counts[p]));
    }
    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(derive_seed(spec.seed, p));
    rng.shuffle(idx);
    idx.resize(counts[p]);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) out.push_back({static_cast<PoolKind>(p), pool[i].id, pool[i].payload});
  }
  Rng rng(derive_seed(spec.seed, 3));
  rng.shuffle(out);
  return out;
}

std::size_t max_feasible_total(const MixSpec& spec, std::array<std::size_t, 3> pool_sizes) {
  validate(spec);
  auto fits = [&](std::size_t total) {
    MixSpec s = spec;
    s.total = total;
    const auto c = apportion(s);
    return c[0] <= pool_sizes[0] && c[1] <= pool_sizes[1] && c[2] <= pool_sizes[2];
  };
  // Largest remainder is not monotone in the total, so scan down from the pool sum.
  for (std::size_t t = pool_sizes[0] + pool_sizes[1] + pool_sizes[2]; t > 0; --t) {
    if (fits(t)) return t;
  }
  return 0;
}

std::string mixed_to_line(const MixedRecord& r) {
  Json j;
  j["source"] = to_string(r.source);
  j["id"] = r.id;
  j["record"] = r.payload;
  return j.dump();
}

MixedRecord mixed_from_line(const std::string& line) {
  try {
    const Json j = Json::parse(line);
    return {pool_kind_from_string(j.at("source").get<std::string>()), j.at("id").get<std::string>(),
            j.at("record")};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed mixed record: ") + e.what());
  }
}

}  // namespace guidyn
