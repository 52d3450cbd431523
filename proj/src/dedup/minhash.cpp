#include "guidyn/dedup/minhash.hpp"

#include <algorithm>
#include <limits>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/rng.hpp"

namespace guidyn {

namespace {

constexpr std::uint64_t kP = MinHasher::kPrime;

std::uint64_t reduce(unsigned __int128 v) {
  // v < 2^122, so two folds bring it below 2p.
  std::uint64_t r = static_cast<std::uint64_t>(v & kP) + static_cast<std::uint64_t>(v >> 61);
  r = (r & kP) + (r >> 61);
  return r >= kP ? r - kP : r;
}

}  // namespace

TokenSet::TokenSet(std::vector<std::uint64_t> tokens) : tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
  tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
}

double exact_jaccard(const TokenSet& a, const TokenSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  auto i = a.tokens().begin();
  auto j = b.tokens().begin();
  while (i != a.tokens().end() && j != b.tokens().end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

MinHasher::MinHasher(std::size_t k, std::uint64_t perm_seed) : seed_(perm_seed) {
  if (k < 1) throw ConfigError("MinHash needs k >= 1");
  Rng rng(perm_seed);
  a_.reserve(k);
  b_.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    a_.push_back(1 + rng.below(kP - 1));
    b_.push_back(rng.below(kP));
  }
}

MinHashSignature MinHasher::sign(const TokenSet& tokens) const {
  if (tokens.empty()) throw DataError("cannot sign an empty token set");
  MinHashSignature sig{seed_, std::vector<std::uint64_t>(a_.size(),
                                                         std::numeric_limits<std::uint64_t>::max())};
  for (std::uint64_t token : tokens.tokens()) {
    const std::uint64_t x = token % kP;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const std::uint64_t h = reduce(static_cast<unsigned __int128>(a_[i]) * x + b_[i]);
      sig.values[i] = std::min(sig.values[i], h);
    }
  }
  return sig;
}

MinHashSignature minhash(const TokenSet& tokens, std::size_t k, std::uint64_t perm_seed) {
  return MinHasher(k, perm_seed).sign(tokens);
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
  if (a.k() != b.k() || a.perm_seed != b.perm_seed || a.k() == 0) {
    throw DataError("signatures were built with different configurations");
  }
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.k(); ++i) agree += a.values[i] == b.values[i];
  return static_cast<double>(agree) / static_cast<double>(a.k());
}

}  // namespace guidyn
