#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guidyn/dedup/clustering.hpp"
#include "guidyn/env/types.hpp"
#include "guidyn/explore/transition.hpp"

namespace guidyn {

// Bits are packed most-significant first: slot 0 is bit 63.
std::uint64_t phash(const Raster& raster);
std::uint64_t dhash(const Raster& raster);

// pHash and dHash of one screenshot.
struct ImageHash {
  std::uint64_t p = 0;
  std::uint64_t d = 0;
};
ImageHash image_hash(const Raster& raster);

// pHash(pre) | dHash(pre) | pHash(post) | dHash(post), 256 bits.
struct VisualFingerprint {
  std::array<std::uint64_t, 4> words{};

  bool bit(std::size_t i) const { return (words[i / 64] >> (63 - i % 64)) & 1U; }
  std::string hex() const;  // 64 lowercase hex characters
  static VisualFingerprint from_hex(std::string_view hex);
  friend bool operator==(const VisualFingerprint&, const VisualFingerprint&) = default;
};

VisualFingerprint make_fingerprint(const ImageHash& pre, const ImageHash& post);
VisualFingerprint fingerprint(const Raster& pre, const Raster& post);
int hamming(const VisualFingerprint& a, const VisualFingerprint& b);
// Distance between the pre half and the post half.
int static_distance(const VisualFingerprint& f);

struct VisualParams {
  int theta_static = 4;
  int theta_cluster = 10;
  int n_bit_samples = 16;
  int sample_width = 16;
  std::uint64_t sample_seed = 0xb175;
};

void validate(const VisualParams& params);

bool is_static(const Transition& t, const GraphSet& graphs, int theta_static);

// Bit-sampling LSH: each projection reads `sample_width` seeded distinct bit positions.
class BitSampler {
 public:
  explicit BitSampler(const VisualParams& params);

  std::size_t projections() const noexcept { return positions_.size(); }
  std::uint64_t key(std::size_t projection, const VisualFingerprint& f) const;
  // Index pairs (i < j) sharing a bucket in any projection, sorted and unique.
  std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(
      const std::vector<VisualFingerprint>& fps) const;

 private:
  std::vector<std::vector<int>> positions_;
};

// Unions candidate pairs within theta_cluster; components keep one representative.
Clustering cluster_fingerprints(const std::vector<VisualFingerprint>& fps,
                                const std::vector<DedupKey>& keys, const VisualParams& params);

// Fraction of pairs within theta_cluster that share at least one bucket (1 when there are
// no such pairs).
double candidate_recall(const std::vector<VisualFingerprint>& fps, const VisualParams& params);

struct VisualDedupResult {
  std::vector<Transition> survivors;                          // corpus order
  std::vector<std::pair<std::string, std::string>> clusters;  // non-static (member, rep)
  std::vector<std::string> static_dropped;
  std::vector<std::pair<std::string, VisualFingerprint>> fingerprints;  // every input
};

VisualDedupResult dedup_visual(const std::vector<Transition>& corpus, const GraphSet& graphs,
                               const VisualParams& params, std::size_t parallelism = 1);

// Sidecar lines "<transition_id> <64 hex>".
std::vector<std::string> fingerprint_lines(const VisualDedupResult& result);

}  // namespace guidyn
