#pragma once

// Counter-based random streams: every (seed, stream, index) triple maps to an
// independent uniform draw, so sampling decisions do not depend on iteration
// order or on how work is split across threads.

#include <cstdint>
#include <random>
#include <string_view>

namespace hsp::rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a, used to turn stage names into stream ids.
constexpr std::uint64_t tag(std::string_view name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed of a named substream.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix(mix(seed) ^ mix(stream + 0x632be59bd9b4e019ULL));
}

/// Uniform draw in [0, 1) for element `index` of the stream.
constexpr double uniform(std::uint64_t stream_seed, std::uint64_t index) noexcept {
  const std::uint64_t bits = mix(stream_seed ^ mix(index));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// A conventional engine seeded from a substream, for sequential draws.
inline std::mt19937_64 engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(derive(seed, stream));
}

}  // namespace hsp::rng
