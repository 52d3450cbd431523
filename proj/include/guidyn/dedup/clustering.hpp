#pragma once

#include <string>
#include <vector>

#include "guidyn/dedup/union_find.hpp"

namespace guidyn {

struct DedupKey {
  std::string id;
  int priority = 0;
};

struct Clustering {
  // For each input index, the index of its component's representative.
  std::vector<std::size_t> representative;
  // Representatives in ascending input order.
  std::vector<std::size_t> survivors;
};

// Representative of each component: highest priority, then lexicographically smallest id.
Clustering resolve_clusters(DisjointSet& sets, const std::vector<DedupKey>& keys);

// True when `a` should represent a component in preference to `b`.
bool preferred_representative(const DedupKey& a, const DedupKey& b);

}  // namespace guidyn
