#pragma once

#include <cstdint>
#include <random>

namespace tripent {

/// SplitMix64 finalizer. Used to derive statistically independent substream
/// seeds from a user seed and a stream index.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Engine for substream `stream` of `seed`.
inline std::mt19937_64 make_substream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(substream_seed(seed, stream));
}

}  // namespace tripent
