#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "guidyn/env/serialize.hpp"

namespace guidyn {

struct FunnelReport {
  std::size_t raw = 0;
  std::size_t post_structural = 0;
  std::size_t post_visual = 0;
  std::size_t post_semantic = 0;
  std::size_t samples_emitted = 0;
  // stage name -> reason -> count
  std::map<std::string, std::map<std::string, std::size_t>> rejections;

  friend bool operator==(const FunnelReport&, const FunnelReport&) = default;
};

// Throws DataError if any filter stage count exceeds its predecessor.
void check_monotone(const FunnelReport& r);

// Stage names whose manifests feed the funnel, in pipeline order.
const std::vector<std::string>& funnel_stages();

// Builds the report from stage manifests keyed by stage name. Each manifest carries
// report.{records_in, records_out, rejections}. Throws ManifestError for a missing stage
// or a broken chain (records_in differing from the upstream records_out) and DataError
// for a count increase.
FunnelReport report_funnel(const std::map<std::string, Json>& manifests);

Json funnel_to_json(const FunnelReport& r);
FunnelReport funnel_from_json(const Json& j);
// Aligned plain-text table with per-stage counts, retention and rejection reasons.
std::string funnel_table(const FunnelReport& r);

}  // namespace guidyn
