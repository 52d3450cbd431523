#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "guidyn/pipeline/config.hpp"

namespace guidyn {

struct RunContext {
  PipelineConfig config;
  std::filesystem::path out;  // run directory; each stage writes <out>/<stage>/
  std::size_t workers = 1;
  std::FILE* log = stderr;  // plain progress lines; null silences them
};

// Stage names in pipeline order; `all` runs them in this order.
const std::vector<std::string>& stage_names();

// Upstream stages whose manifests a stage consumes.
const std::vector<std::string>& upstream_of(const std::string& stage);

// Runs one stage after validating its upstream manifests and writes
// <out>/<stage>/manifest.json last. Returns the manifest.
//   ManifestError  upstream manifest missing, malformed or stale
//   IntegrityError upstream output digest mismatch
//   ConfigError    config differs from an upstream snapshot on keys that stage used
Json run_stage(const std::string& stage, const RunContext& ctx);

void run_all(const RunContext& ctx);

// Loads <out>/<stage>/manifest.json and verifies every listed output digest.
Json load_manifest(const std::filesystem::path& out, const std::string& stage);

// Manifest file digest, as recorded by downstream stages.
std::string manifest_digest(const std::filesystem::path& out, const std::string& stage);

}  // namespace guidyn
