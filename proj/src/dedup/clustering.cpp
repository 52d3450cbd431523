#include "guidyn/dedup/clustering.hpp"

#include "guidyn/common/errors.hpp"

namespace guidyn {

bool preferred_representative(const DedupKey& a, const DedupKey& b) {
  if (a.priority != b.priority) return a.priority > b.priority;
  return a.id < b.id;
}

Clustering resolve_clusters(DisjointSet& sets, const std::vector<DedupKey>& keys) {
  if (sets.size() != keys.size()) throw DataError("cluster keys do not match the set size");
  const std::size_t n = keys.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> best(n, kNone);  // indexed by root
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (best[root] == kNone || preferred_representative(keys[i], keys[best[root]])) best[root] = i;
  }
  Clustering out;
  out.representative.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.representative[i] = best[sets.find(i)];
    if (out.representative[i] == i) out.survivors.push_back(i);
  }
  return out;
}

}  // namespace guidyn
