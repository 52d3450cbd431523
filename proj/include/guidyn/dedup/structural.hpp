#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "guidyn/dedup/clustering.hpp"
#include "guidyn/dedup/minhash.hpp"
#include "guidyn/explore/transition.hpp"

namespace guidyn {

struct StructuralParams {
  std::size_t k = 128;
  std::size_t bands = 32;
  std::size_t rows = 4;
  double jaccard_threshold = 0.85;
  std::uint64_t perm_seed = 0x5eed;
};

void validate(const StructuralParams& params);

// Role-tagged (tag, xpath, events) tokens of every node in the pre and post trees. Node
// text is excluded, so instances of the same templates produce equal sets.
TokenSet tokenize_transition(const Transition& t, const GraphSet& graphs);

// Banded LSH over MinHash signatures: b tables keyed by the digest of r consecutive rows.
class LshIndex {
 public:
  LshIndex(std::size_t bands, std::size_t rows);

  void insert(std::size_t item, const MinHashSignature& sig);
  // Pairs (i < j) that share a bucket in at least one band, sorted and unique.
  std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs() const;
  // Calls fn(i, j) once per bucket co-membership; duplicates across bands are possible.
  template <typename Fn>
  void for_each_colliding(Fn&& fn) const {
    for (const auto& table : tables_) {
      for (const auto& [key, members] : table) {
        for (std::size_t x = 0; x < members.size(); ++x) {
          for (std::size_t y = x + 1; y < members.size(); ++y) fn(members[x], members[y]);
        }
      }
    }
  }

  std::size_t bands() const noexcept { return bands_; }
  std::size_t rows() const noexcept { return rows_; }

 private:
  std::size_t bands_;
  std::size_t rows_;
  std::vector<std::unordered_map<std::uint64_t, std::vector<std::size_t>>> tables_;
};

// Candidates colliding in >= 1 band whose estimated Jaccard meets the threshold are
// unioned; each connected component keeps one representative.
Clustering cluster_signatures(const std::vector<MinHashSignature>& signatures,
                              const std::vector<DedupKey>& keys, const StructuralParams& params);

struct DedupResult {
  std::vector<Transition> survivors;                       // corpus order
  std::vector<std::pair<std::string, std::string>> clusters;  // (member, representative)
};

DedupResult dedup_structural(const std::vector<Transition>& corpus, const GraphSet& graphs,
                             const StructuralParams& params, std::size_t parallelism = 1);

}  // namespace guidyn
