#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rdsim {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream-kind tags used as the first derivation word, so that streams for
/// different purposes never collide even at equal coordinates.
enum StreamTag : std::uint64_t {
  kPopulationStream = 1,
  kNetworkStream = 2,
  kRunStream = 3,
  kDegreeReportStream = 4,
  kWalkStream = 5,
  kSeedStream = 6,
};

/// Derives an independent engine from a master seed and a coordinate tuple.
/// The derivation is a fixed fold over the words, so a given (master,
/// coordinates) pair names the same stream on every call, regardless of
/// which worker asks or in what order. This is what makes parallel grid
/// execution schedule-independent.
Rng derive_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> words);

}  // namespace rdsim
