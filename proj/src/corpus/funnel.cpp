#include "guidyn/corpus/funnel.hpp"

#include <fmt/format.h>

#include "guidyn/common/errors.hpp"

namespace guidyn {

void check_monotone(const FunnelReport& r) {
  if (r.post_structural > r.raw || r.post_visual > r.post_structural ||
      r.post_semantic > r.post_visual) {
    throw DataError(fmt::format("funnel counts increase: {} -> {} -> {} -> {}", r.raw,
                                r.post_structural, r.post_visual, r.post_semantic));
  }
}

const std::vector<std::string>& funnel_stages() {
  static const std::vector<std::string> kStages{"explore", "dedup-struct", "dedup-visual",
                                                "filter-semantic", "synth"};
  return kStages;
}

FunnelReport report_funnel(const std::map<std::string, Json>& manifests) {
  std::vector<std::size_t> out;
  FunnelReport r;
  try {
    for (const auto& stage : funnel_stages()) {
      auto it = manifests.find(stage);
      if (it == manifests.end()) throw ManifestError("missing stage manifest: " + stage);
      const Json& rep = it->second.at("report");
      const auto records_in = rep.at("records_in").get<std::size_t>();
      if (!out.empty() && records_in != out.back()) {
        throw ManifestError(fmt::format("stage {} read {} records but upstream wrote {}", stage,
                                        records_in, out.back()));
      }
      out.push_back(rep.at("records_out").get<std::size_t>());
      if (rep.contains("rejections")) {
        for (const auto& [reason, n] : rep.at("rejections").items()) {
          r.rejections[stage][reason] = n.get<std::size_t>();
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(std::string("malformed stage report: ") + e.what());
  }
  r.raw = out[0];
  r.post_structural = out[1];
  r.post_visual = out[2];
  r.post_semantic = out[3];
  r.samples_emitted = out[4];
  check_monotone(r);
  return r;
}

Json funnel_to_json(const FunnelReport& r) {
  Json j;
  j["raw"] = r.raw;
  j["post_structural"] = r.post_structural;
  j["post_visual"] = r.post_visual;
  j["post_semantic"] = r.post_semantic;
  j["samples_emitted"] = r.samples_emitted;
  j["rejections"] = Json::object();
  for (const auto& [stage, reasons] : r.rejections) {
    for (const auto& [reason, n] : reasons) j["rejections"][stage][reason] = n;
  }
  return j;
}

FunnelReport funnel_from_json(const Json& j) {
  FunnelReport r;
  try {
    r.raw = j.at("raw").get<std::size_t>();
    r.post_structural = j.at("post_structural").get<std::size_t>();
    r.post_visual = j.at("post_visual").get<std::size_t>();
    r.post_semantic = j.at("post_semantic").get<std::size_t>();
    r.samples_emitted = j.at("samples_emitted").get<std::size_t>();
    for (const auto& [stage, reasons] : j.at("rejections").items()) {
      for (const auto& [reason, n] : reasons.items()) r.rejections[stage][reason] = n.get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed funnel report: ") + e.what());
  }
  check_monotone(r);
  return r;
}

std::string funnel_table(const FunnelReport& r) {
  auto pct = [](std::size_t n, std::size_t d) {
    return d == 0 ? std::string("-") : fmt::format("{:.1f}%", 100.0 * static_cast<double>(n) /
                                                                   static_cast<double>(d));
  };
  std::string out = fmt::format("{:<18}{:>10}{:>10}{:>10}\n", "stage", "count", "of prev", "of raw");
  const std::pair<const char*, std::size_t> rows[] = {{"raw", r.raw},
                                                      {"post_structural", r.post_structural},
                                                      {"post_visual", r.post_visual},
                                                      {"post_semantic", r.post_semantic}};
  std::size_t prev = r.raw;
  for (const auto& [name, n] : rows) {
    out += fmt::format("{:<18}{:>10}{:>10}{:>10}\n", name, n, pct(n, prev), pct(n, r.raw));
    prev = n;
  }
  out += fmt::format("{:<18}{:>10}\n", "samples_emitted", r.samples_emitted);
  if (!r.rejections.empty()) {
    out += fmt::format("\n{:<18}{:<24}{:>10}\n", "stage", "reason", "count");
    for (const auto& [stage, reasons] : r.rejections) {
      for (const auto& [reason, n] : reasons) out += fmt::format("{:<18}{:<24}{:>10}\n", stage, reason, n);
    }
  }
  return out;
}

}  // namespace guidyn
