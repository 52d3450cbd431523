#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace guidyn {

// 64-bit FNV-1a. Stable across platforms; used wherever a hash value is persisted
// or feeds a seeded decision.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept {
  return mix64(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

inline std::uint64_t hash_parts(std::initializer_list<std::string_view> parts) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::string_view p : parts) {
    h = fnv1a64(p, h);
    h = fnv1a64(std::string_view("\x1f", 1), h);
  }
  return h;
}

}  // namespace guidyn
