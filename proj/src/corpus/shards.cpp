#include "guidyn/corpus/shards.hpp"

#include <fmt/format.h>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/io.hpp"
#include "guidyn/common/parallel.hpp"

namespace guidyn {

Json write_shards(const std::vector<std::string>& lines, const std::filesystem::path& dir,
                  std::size_t shard_size, const std::string& prefix, std::size_t parallelism) {
  if (shard_size < 1) throw ConfigError("shard_size must be >= 1");
  const std::size_t n_shards = (lines.size() + shard_size - 1) / shard_size;
  std::vector<Json> entries(n_shards);
  parallel_for(n_shards, parallelism, [&](std::size_t s) {
    const std::size_t begin = s * shard_size;
    const std::size_t end = std::min(lines.size(), begin + shard_size);
    const std::vector<std::string> chunk(lines.begin() + static_cast<std::ptrdiff_t>(begin),
                                         lines.begin() + static_cast<std::ptrdiff_t>(end));
    const std::string content = join_lines(chunk);
    const std::string file = fmt::format("{}-{:05}.jsonl", prefix, s);
    write_file(dir / file, content);
    Json e;
    e["file"] = file;
    e["records"] = chunk.size();
    e["sha256"] = sha256_hex(content);
    entries[s] = std::move(e);
  });
  Json section;
  section["shard_size"] = shard_size;
  section["records"] = lines.size();
  section["shards"] = Json::array();
  for (auto& e : entries) section["shards"].push_back(std::move(e));
  return section;
}

std::vector<std::string> read_shards(const std::filesystem::path& dir, const Json& section) {
  std::vector<std::string> lines;
  try {
    for (const auto& e : section.at("shards")) {
      const std::string file = e.at("file").get<std::string>();
      if (!std::filesystem::exists(dir / file)) throw IntegrityError("missing shard " + file);
      const std::string content = read_file(dir / file);
      if (sha256_hex(content) != e.at("sha256").get<std::string>()) {
        throw IntegrityError("digest mismatch for shard " + file);
      }
      auto chunk = split_lines(content);
      if (chunk.size() != e.at("records").get<std::size_t>()) {
        throw IntegrityError("record count mismatch for shard " + file);
      }
      for (auto& l : chunk) lines.push_back(std::move(l));
    }
    if (lines.size() != section.at("records").get<std::size_t>()) {
      throw IntegrityError("record total does not match the shard list");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(std::string("malformed shard section: ") + e.what());
  }
  return lines;
}

std::string shards_digest(const Json& section) {
  std::string acc;
  try {
    for (const auto& e : section.at("shards")) acc += e.at("sha256").get<std::string>() + "\n";
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(std::string("malformed shard section: ") + e.what());
  }
  return sha256_hex(acc);
}

}  // namespace guidyn
