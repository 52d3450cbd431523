#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace guidyn {

// Set of 64-bit token hashes, kept sorted and unique.
class TokenSet {
 public:
  TokenSet() = default;
  explicit TokenSet(std::vector<std::uint64_t> tokens);

  const std::vector<std::uint64_t>& tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  friend bool operator==(const TokenSet&, const TokenSet&) = default;

 private:
  std::vector<std::uint64_t> tokens_;
};

double exact_jaccard(const TokenSet& a, const TokenSet& b);

struct MinHashSignature {
  std::uint64_t perm_seed = 0;
  std::vector<std::uint64_t> values;  // k minima

  std::size_t k() const noexcept { return values.size(); }
  friend bool operator==(const MinHashSignature&, const MinHashSignature&) = default;
};

// k universal-hash permutations x -> (a*x + b) mod (2^61 - 1), coefficients drawn from
// perm_seed.
class MinHasher {
 public:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  MinHasher(std::size_t k, std::uint64_t perm_seed);

  // Throws DataError on an empty set.
  MinHashSignature sign(const TokenSet& tokens) const;

  std::size_t k() const noexcept { return a_.size(); }
  std::uint64_t perm_seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
};

MinHashSignature minhash(const TokenSet& tokens, std::size_t k, std::uint64_t perm_seed);

// Fraction of agreeing positions. Throws DataError when k or perm_seed differ.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

}  // namespace guidyn
