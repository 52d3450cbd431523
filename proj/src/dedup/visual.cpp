#include "guidyn/dedup/visual.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/parallel.hpp"
#include "guidyn/common/rng.hpp"
#include "guidyn/dedup/union_find.hpp"

namespace guidyn {

namespace {

constexpr int kSide = 32;    // pHash working resolution
constexpr int kBlock = 8;    // low-frequency block
constexpr double kQuantum = 1e6;  // coefficients are compared at 1e-6 resolution

void check_raster(const Raster& r) {
  if (r.empty() || r.pixels.size() != static_cast<std::size_t>(r.width) * r.height) {
    throw DataError("degenerate raster");
  }
}

// Sum and pixel count of the box covering output cell (ox, oy) of an out_w x out_h grid.
struct Box {
  std::int64_t sum = 0;
  std::int64_t count = 0;
};

std::vector<Box> box_downscale(const Raster& r, int out_w, int out_h) {
  std::vector<Box> boxes(static_cast<std::size_t>(out_w) * out_h);
  for (int oy = 0; oy < out_h; ++oy) {
    int y0 = static_cast<int>(static_cast<std::int64_t>(oy) * r.height / out_h);
    int y1 = static_cast<int>(static_cast<std::int64_t>(oy + 1) * r.height / out_h);
    y1 = std::max(y1, y0 + 1);
    y0 = std::min(y0, r.height - 1);
    y1 = std::min(y1, r.height);
    for (int ox = 0; ox < out_w; ++ox) {
      int x0 = static_cast<int>(static_cast<std::int64_t>(ox) * r.width / out_w);
      int x1 = static_cast<int>(static_cast<std::int64_t>(ox + 1) * r.width / out_w);
      x1 = std::max(x1, x0 + 1);
      x0 = std::min(x0, r.width - 1);
      x1 = std::min(x1, r.width);
      Box& b = boxes[static_cast<std::size_t>(oy) * out_w + ox];
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) b.sum += r.at(x, y);
      }
      b.count = static_cast<std::int64_t>(y1 - y0) * (x1 - x0);
    }
  }
  return boxes;
}

// JPEG zigzag order of the 8x8 block without DC, then the first cell of the next
// anti-diagonal.
std::vector<std::pair<int, int>> hash_slots() {
  std::vector<std::pair<int, int>> order;
  for (int d = 0; d < 2 * kBlock - 1; ++d) {
    for (int i = 0; i <= d; ++i) {
      const int row = d % 2 == 0 ? d - i : i;
      const int col = d - row;
      if (row < kBlock && col < kBlock) order.emplace_back(row, col);
    }
  }
  order.erase(order.begin());
  order.emplace_back(kBlock, 0);
  return order;
}

const std::vector<std::pair<int, int>>& slots() {
  static const std::vector<std::pair<int, int>> s = hash_slots();
  return s;
}

// cos_table[u][x] = alpha(u) * cos(pi * (2x + 1) * u / 2N) for u <= kBlock.
const std::vector<std::vector<double>>& cos_table() {
  static const std::vector<std::vector<double>> t = [] {
    std::vector<std::vector<double>> table(kBlock + 1, std::vector<double>(kSide));
    for (int u = 0; u <= kBlock; ++u) {
      const double alpha = u == 0 ? std::sqrt(1.0 / kSide) : std::sqrt(2.0 / kSide);
      for (int x = 0; x < kSide; ++x) {
        table[u][x] = alpha * std::cos(std::numbers::pi * (2 * x + 1) * u / (2.0 * kSide));
      }
    }
    return table;
  }();
  return t;
}

std::uint64_t pack_bits(const std::vector<bool>& bits) {
  std::uint64_t h = 0;
  for (bool b : bits) h = (h << 1) | (b ? 1U : 0U);
  return h;
}

}  // namespace

std::uint64_t phash(const Raster& raster) {
  check_raster(raster);
  const auto boxes = box_downscale(raster, kSide, kSide);
  std::vector<double> img(boxes.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    img[i] = static_cast<double>(boxes[i].sum) / static_cast<double>(boxes[i].count);
    mean += img[i];
  }
  mean /= static_cast<double>(img.size());
  for (double& v : img) v -= mean;

  const auto& c = cos_table();
  // Rows first: tmp[y][v], then columns: coef[u][v], for u, v <= kBlock.
  std::vector<std::array<double, kBlock + 1>> tmp(kSide);
  for (int y = 0; y < kSide; ++y) {
    for (int v = 0; v <= kBlock; ++v) {
      double s = 0.0;
      for (int x = 0; x < kSide; ++x) s += img[static_cast<std::size_t>(y) * kSide + x] * c[v][x];
      tmp[y][v] = s;
    }
  }
  std::vector<double> coef;
  coef.reserve(64);
  for (const auto& [u, v] : slots()) {
    double s = 0.0;
    for (int y = 0; y < kSide; ++y) s += tmp[y][v] * c[u][y];
    coef.push_back(std::round(s * kQuantum) / kQuantum);
  }
  std::vector<double> sorted = coef;
  std::sort(sorted.begin(), sorted.end());
  const double median = (sorted[31] + sorted[32]) / 2.0;
  std::vector<bool> bits;
  bits.reserve(64);
  for (double v : coef) bits.push_back(v > median);
  return pack_bits(bits);
}

std::uint64_t dhash(const Raster& raster) {
  check_raster(raster);
  const auto boxes = box_downscale(raster, 9, 8);
  std::vector<bool> bits;
  bits.reserve(64);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      const Box& a = boxes[static_cast<std::size_t>(r) * 9 + c];
      const Box& b = boxes[static_cast<std::size_t>(r) * 9 + c + 1];
      bits.push_back(a.sum * b.count > b.sum * a.count);
    }
  }
  return pack_bits(bits);
}

ImageHash image_hash(const Raster& raster) { return {phash(raster), dhash(raster)}; }

std::string VisualFingerprint::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint64_t w : words) {
    for (int shift = 60; shift >= 0; shift -= 4) out.push_back(kDigits[(w >> shift) & 0xF]);
  }
  return out;
}

VisualFingerprint VisualFingerprint::from_hex(std::string_view hex) {
  if (hex.size() != 64) throw DataError("fingerprint hex must have 64 characters");
  VisualFingerprint f;
  for (std::size_t i = 0; i < 64; ++i) {
    const char ch = hex[i];
    int v;
    if (ch >= '0' && ch <= '9') {
      v = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      v = ch - 'a' + 10;
    } else {
      throw DataError("invalid fingerprint hex character");
    }
    f.words[i / 16] = (f.words[i / 16] << 4) | static_cast<std::uint64_t>(v);
  }
  return f;
}

VisualFingerprint make_fingerprint(const ImageHash& pre, const ImageHash& post) {
  return VisualFingerprint{{pre.p, pre.d, post.p, post.d}};
}

VisualFingerprint fingerprint(const Raster& pre, const Raster& post) {
  return make_fingerprint(image_hash(pre), image_hash(post));
}

int hamming(const VisualFingerprint& a, const VisualFingerprint& b) {
  int d = 0;
  for (std::size_t i = 0; i < 4; ++i) d += std::popcount(a.words[i] ^ b.words[i]);
  return d;
}

int static_distance(const VisualFingerprint& f) {
  return std::popcount(f.words[0] ^ f.words[2]) + std::popcount(f.words[1] ^ f.words[3]);
}

void validate(const VisualParams& params) {
  if (params.theta_static < 0 || params.theta_static > 128) {
    throw ConfigError("theta_static must lie in [0, 128]");
  }
  if (params.theta_cluster < 0 || params.theta_cluster > 256) {
    throw ConfigError("theta_cluster must lie in [0, 256]");
  }
  if (params.n_bit_samples < 1) throw ConfigError("n_bit_samples must be >= 1");
  if (params.sample_width < 1 || params.sample_width > 64) {
    throw ConfigError("sample_width must lie in [1, 64]");
  }
}

bool is_static(const Transition& t, const GraphSet& graphs, int theta_static) {
  if (theta_static < 0) throw ConfigError("theta_static must be >= 0");
  const ResolvedTransition r = resolve(t, graphs);
  if (r.pre->raster.empty() || r.post->raster.empty()) {
    throw DataError("missing raster for transition " + t.transition_id);
  }
  return static_distance(fingerprint(r.pre->raster, r.post->raster)) <= theta_static;
}

BitSampler::BitSampler(const VisualParams& params) {
  validate(params);
  Rng rng(params.sample_seed);
  std::vector<int> all(256);
  for (int i = 0; i < 256; ++i) all[i] = i;
  for (int p = 0; p < params.n_bit_samples; ++p) {
    rng.shuffle(all);
    positions_.emplace_back(all.begin(), all.begin() + params.sample_width);
  }
}

std::uint64_t BitSampler::key(std::size_t projection, const VisualFingerprint& f) const {
  std::uint64_t k = 0;
  for (int pos : positions_.at(projection)) k = (k << 1) | (f.bit(pos) ? 1U : 0U);
  return k;
}

std::vector<std::pair<std::size_t, std::size_t>> BitSampler::candidate_pairs(
    const std::vector<VisualFingerprint>& fps) const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t p = 0; p < positions_.size(); ++p) {
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
    keyed.reserve(fps.size());
    for (std::size_t i = 0; i < fps.size(); ++i) keyed.emplace_back(key(p, fps[i]), i);
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t lo = 0; lo < keyed.size();) {
      std::size_t hi = lo;
      while (hi < keyed.size() && keyed[hi].first == keyed[lo].first) ++hi;
      for (std::size_t x = lo; x < hi; ++x) {
        for (std::size_t y = x + 1; y < hi; ++y) pairs.emplace_back(keyed[x].second, keyed[y].second);
      }
      lo = hi;
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

Clustering cluster_fingerprints(const std::vector<VisualFingerprint>& fps,
                                const std::vector<DedupKey>& keys, const VisualParams& params) {
  validate(params);
  if (fps.size() != keys.size()) throw DataError("fingerprint and key counts differ");
  DisjointSet sets(fps.size());

  // Identical fingerprints are at distance 0; bucket only one of each.
  std::map<std::array<std::uint64_t, 4>, std::size_t> first_with;
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < fps.size(); ++i) {
    auto [it, inserted] = first_with.emplace(fps[i].words, i);
    if (inserted) {
      distinct.push_back(i);
    } else {
      sets.unite(it->second, i);
    }
  }
  std::vector<VisualFingerprint> unique;
  unique.reserve(distinct.size());
  for (std::size_t i : distinct) unique.push_back(fps[i]);

  std::vector<std::pair<std::size_t, std::size_t>> verified;
  for (const auto& [a, b] : BitSampler(params).candidate_pairs(unique)) {
    if (hamming(unique[a], unique[b]) <= params.theta_cluster) {
      verified.emplace_back(distinct[a], distinct[b]);
    }
  }
  auto by_ids = [&](const std::pair<std::size_t, std::size_t>& p) {
    const bool swap = keys[p.second].id < keys[p.first].id;
    return std::pair<const std::string&, const std::string&>(
        swap ? keys[p.second].id : keys[p.first].id, swap ? keys[p.first].id : keys[p.second].id);
  };
  std::sort(verified.begin(), verified.end(),
            [&](const auto& x, const auto& y) { return by_ids(x) < by_ids(y); });
  for (const auto& [a, b] : verified) sets.unite(a, b);
  return resolve_clusters(sets, keys);
}

double candidate_recall(const std::vector<VisualFingerprint>& fps, const VisualParams& params) {
  const auto pairs = BitSampler(params).candidate_pairs(fps);
  std::size_t near = 0;
  std::size_t found = 0;
  for (std::size_t i = 0; i < fps.size(); ++i) {
    for (std::size_t j = i + 1; j < fps.size(); ++j) {
      if (hamming(fps[i], fps[j]) > params.theta_cluster) continue;
      ++near;
      found += std::binary_search(pairs.begin(), pairs.end(), std::make_pair(i, j));
    }
  }
  return near == 0 ? 1.0 : static_cast<double>(found) / static_cast<double>(near);
}

VisualDedupResult dedup_visual(const std::vector<Transition>& corpus, const GraphSet& graphs,
                               const VisualParams& params, std::size_t parallelism) {
  validate(params);
  // Hash each referenced screenshot once.
  std::map<std::pair<std::string, std::string>, std::size_t> slot_of;
  std::vector<const UiState*> states;
  std::vector<std::pair<std::size_t, std::size_t>> ends(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const ResolvedTransition r = resolve(corpus[i], graphs);
    auto slot = [&](const UiState* s) {
      auto [it, inserted] = slot_of.emplace(std::make_pair(corpus[i].app_id, s->state_id),
                                            states.size());
      if (inserted) states.push_back(s);
      return it->second;
    };
    ends[i] = {slot(r.pre), slot(r.post)};
  }
  std::vector<ImageHash> hashes(states.size());
  parallel_for(states.size(), parallelism, [&](std::size_t s) {
    if (states[s]->raster.empty()) throw DataError("missing raster for " + states[s]->state_id);
    hashes[s] = image_hash(states[s]->raster);
  });

  VisualDedupResult out;
  std::vector<std::size_t> kept;
  std::vector<VisualFingerprint> fps;
  std::vector<DedupKey> keys;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const VisualFingerprint f = make_fingerprint(hashes[ends[i].first], hashes[ends[i].second]);
    out.fingerprints.emplace_back(corpus[i].transition_id, f);
    if (static_distance(f) <= params.theta_static) {
      out.static_dropped.push_back(corpus[i].transition_id);
      continue;
    }
    kept.push_back(i);
    fps.push_back(f);
    keys.push_back({corpus[i].transition_id, corpus[i].source_priority});
  }
  const Clustering c = cluster_fingerprints(fps, keys, params);
  for (std::size_t s : c.survivors) out.survivors.push_back(corpus[kept[s]]);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    out.clusters.emplace_back(keys[k].id, keys[c.representative[k]].id);
  }
  return out;
}

std::vector<std::string> fingerprint_lines(const VisualDedupResult& result) {
  std::vector<std::string> lines;
  lines.reserve(result.fingerprints.size());
  for (const auto& [id, f] : result.fingerprints) lines.push_back(id + " " + f.hex());
  return lines;
}

}  // namespace guidyn
