#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "guidyn/env/serialize.hpp"

namespace guidyn {

// Writes `lines` as consecutive shards of at most `shard_size` lines, named
// <prefix>-<index>.jsonl. Returns {"shard_size", "records", "shards": [{file, records,
// sha256}...]}. Shards are written in parallel; the caller writes the manifest last.
Json write_shards(const std::vector<std::string>& lines, const std::filesystem::path& dir,
                  std::size_t shard_size, const std::string& prefix = "part",
                  std::size_t parallelism = 1);

// Reads the shards listed in a section from write_shards. Throws IntegrityError on a
// digest or record-count mismatch and ManifestError on a malformed section.
std::vector<std::string> read_shards(const std::filesystem::path& dir, const Json& section);

// Digest over the shard digests in listed order: one value identifying a sharded output.
std::string shards_digest(const Json& section);

}  // namespace guidyn
