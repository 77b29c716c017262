#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace lscd {

using Rng = std::mt19937_64;

/// 64-bit FNV-1a; stable across platforms and runs.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-word seed: independent of the order in which words are visited.
constexpr std::uint64_t derive_word_seed(std::uint64_t master_seed, std::string_view word) {
  return splitmix64(master_seed ^ splitmix64(fnv1a64(word)));
}

/// k distinct indices from [0, n), drawn uniformly by a partial
/// Fisher-Yates shuffle, returned in ascending order.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng);

}  // namespace lscd

namespace lscd {

/// Seed for the random-dimension draw of one word at target dimension k.
/// Mixing k in gives an independent subset per k instead of nested prefixes.
constexpr std::uint64_t rand_dims_seed(std::uint64_t master_seed, std::string_view word, int k) {
  return splitmix64(derive_word_seed(master_seed, word) ^ splitmix64(0x52414e44ULL + static_cast<std::uint64_t>(k)));
}

/// Seed for SAMD's equal-size sampling of one word.
constexpr std::uint64_t sample_seed(std::uint64_t master_seed, std::string_view word) {
  return splitmix64(derive_word_seed(master_seed, word) ^ 0x53414d44ULL);
}

}  // namespace lscd
