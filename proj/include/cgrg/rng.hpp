#pragma once

#include <cstdint>
#include <random>

namespace cgrg {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014); constants
/// 0x9e3779b97f4a7c15, 0xbf58476d1ce4e5b9, 0x94d049bb133111eb.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of sub-stream k derived from a master seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t k) {
  return splitmix64(splitmix64(seed) ^ splitmix64(k + 0x632be59bd9b4e019ULL));
}

/// Fixed sub-stream ids. Positions and colors never share a stream, so
/// edge-only parameters cannot perturb them.
enum class Stream : std::uint64_t { Positions = 0, Colors = 1, Auxiliary = 2 };

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, Stream s) {
  return Engine(stream_seed(seed, static_cast<std::uint64_t>(s)));
}

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Engine& e) { return static_cast<double>(e() >> 11) * 0x1.0p-53; }

}  // namespace cgrg
