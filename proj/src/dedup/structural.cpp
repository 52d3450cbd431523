#include "guidyn/dedup/structural.hpp"

#include <algorithm>
#include <map>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/hash.hpp"
#include "guidyn/common/parallel.hpp"

namespace guidyn {

void validate(const StructuralParams& params) {
  if (params.k < 1) throw ConfigError("structural k must be >= 1");
  if (params.bands < 1 || params.rows < 1) throw ConfigError("bands and rows must be >= 1");
  if (params.bands * params.rows != params.k) throw ConfigError("bands * rows must equal k");
  if (!(params.jaccard_threshold > 0.0 && params.jaccard_threshold <= 1.0)) {
    throw ConfigError("jaccard_threshold must lie in (0, 1]");
  }
}

TokenSet tokenize_transition(const Transition& t, const GraphSet& graphs) {
  const ResolvedTransition r = resolve(t, graphs);
  std::vector<std::uint64_t> tokens;
  auto add_state = [&](const UiState& s, std::string_view role) {
    for (const auto& n : s.tree) {
      tokens.push_back(hash_parts({role, "tag", n.tag}));
      tokens.push_back(hash_parts({role, "xpath", n.xpath}));
      tokens.push_back(hash_parts({role, "events", n.events.to_string()}));
    }
  };
  add_state(*r.pre, "pre");
  add_state(*r.post, "post");
  return TokenSet(std::move(tokens));
}

LshIndex::LshIndex(std::size_t bands, std::size_t rows)
    : bands_(bands), rows_(rows), tables_(bands) {
  if (bands < 1 || rows < 1) throw ConfigError("LSH index needs bands, rows >= 1");
}

void LshIndex::insert(std::size_t item, const MinHashSignature& sig) {
  if (sig.k() != bands_ * rows_) throw DataError("signature length does not equal bands * rows");
  for (std::size_t b = 0; b < bands_; ++b) {
    std::uint64_t key = mix64(b);
    for (std::size_t r = 0; r < rows_; ++r) key = hash_combine(key, sig.values[b * rows_ + r]);
    tables_[b][key].push_back(item);
  }
}

std::vector<std::pair<std::size_t, std::size_t>> LshIndex::candidate_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for_each_colliding([&](std::size_t i, std::size_t j) {
    pairs.emplace_back(std::min(i, j), std::max(i, j));
  });
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

Clustering cluster_signatures(const std::vector<MinHashSignature>& signatures,
                              const std::vector<DedupKey>& keys, const StructuralParams& params) {
  validate(params);
  if (signatures.size() != keys.size()) throw DataError("signature and key counts differ");
  DisjointSet sets(signatures.size());

  // Identical signatures always verify (estimate 1.0); collapse them before banding.
  std::map<std::vector<std::uint64_t>, std::size_t> first_with;
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < signatures.size(); ++i) {
    if (signatures[i].k() != params.k) throw DataError("signature length does not match k");
    auto [it, inserted] = first_with.emplace(signatures[i].values, i);
    if (inserted) {
      distinct.push_back(i);
    } else {
      sets.unite(it->second, i);
    }
  }

  LshIndex index(params.bands, params.rows);
  for (std::size_t i : distinct) index.insert(i, signatures[i]);
  index.for_each_colliding([&](std::size_t i, std::size_t j) {
    if (sets.connected(i, j)) return;  // components are unaffected by redundant edges
    if (estimate_jaccard(signatures[i], signatures[j]) >= params.jaccard_threshold) {
      sets.unite(i, j);
    }
  });
  return resolve_clusters(sets, keys);
}

DedupResult dedup_structural(const std::vector<Transition>& corpus, const GraphSet& graphs,
                             const StructuralParams& params, std::size_t parallelism) {
  validate(params);
  // Tokens depend only on (app, pre, post); sign each distinct triple once.
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> slot_of;
  std::vector<std::size_t> slot(corpus.size());
  std::vector<std::size_t> exemplar;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Transition& t = corpus[i];
    auto [it, inserted] = slot_of.emplace(std::make_tuple(t.app_id, t.pre, t.post), exemplar.size());
    if (inserted) exemplar.push_back(i);
    slot[i] = it->second;
  }

  const MinHasher hasher(params.k, params.perm_seed);
  std::vector<MinHashSignature> distinct(exemplar.size());
  parallel_for(exemplar.size(), parallelism, [&](std::size_t s) {
    distinct[s] = hasher.sign(tokenize_transition(corpus[exemplar[s]], graphs));
  });

  std::vector<MinHashSignature> signatures;
  std::vector<DedupKey> keys;
  signatures.reserve(corpus.size());
  keys.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    signatures.push_back(distinct[slot[i]]);
    keys.push_back({corpus[i].transition_id, corpus[i].source_priority});
  }
  const Clustering c = cluster_signatures(signatures, keys, params);

  DedupResult out;
  for (std::size_t i : c.survivors) out.survivors.push_back(corpus[i]);
  out.clusters.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out.clusters.emplace_back(corpus[i].transition_id, corpus[c.representative[i]].transition_id);
  }
  return out;
}

}  // namespace guidyn
