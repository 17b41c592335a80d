#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace predreg {

/// Counter-based normal generator.
///
/// Every draw is a pure function of (seed, stream, counter): the 64-bit word
/// for a counter is the SplitMix64 finalizer applied to
/// `key + (counter + 1) * 0x9E3779B97F4A7C15`, where `key` mixes the seed and
/// the stream id through the same finalizer. Uniforms take the top 53 bits,
/// offset by half an ulp so they lie strictly inside (0, 1). Normal draw `k`
/// is the cosine branch of Box-Muller on uniforms `2k` and `2k + 1`.
///
/// Because no state is shared between streams, Monte Carlo work can be split
/// across threads by assigning streams up front and still reproduce the exact
/// same numbers as a serial run.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix(mix(seed) ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL))) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  }

  double uniform(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal(std::uint64_t index) const noexcept {
    const double u1 = uniform(2 * index);
    const double u2 = uniform(2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
};

/// Sequential view over one stream of a CounterRng.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept : rng_(seed, stream) {}

  double next() noexcept { return rng_.normal(index_++); }
  double next_uniform() noexcept { return rng_.uniform(2 * index_++); }

 private:
  CounterRng rng_;
  std::uint64_t index_ = 0;
};

}  // namespace predreg
