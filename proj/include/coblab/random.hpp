#pragma once

#include <cstdint>
#include <string_view>

namespace coblab {

/// SplitMix64 with explicit substreams. Distribution helpers are defined here
/// rather than taken from <random> so sampled values are identical across
/// standard libraries.
class SplitMix64 {
 public:
  /// Changing the algorithm or any helper below requires bumping this name.
  static constexpr std::string_view kName = "splitmix64-v1";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for sample `index` of a campaign seeded with `seed`.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed);
    const std::uint64_t base = mixer.next();
    return SplitMix64(mix(base ^ mix(index + 0x9E3779B97F4A7C15ull)));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace coblab
