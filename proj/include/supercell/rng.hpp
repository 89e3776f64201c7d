#pragma once

#include <cstdint>

namespace supercell {

/// Counter-based pseudo-random stream (splitmix64). Streams are derived from
/// a seed plus arbitrary key words, so every Monte Carlo trial owns an
/// independent substream and results do not depend on worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  /// Substream keyed by up to three words.
  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0) {
    std::uint64_t s = mix(seed ^ 0x6A09E667F3BCC909ULL);
    s = mix(s ^ a);
    s = mix(s ^ b);
    s = mix(s ^ c);
    return Rng(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  int next_below(int n) {
    const int v = static_cast<int>(next_unit() * n);
    return v >= n ? n - 1 : v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace supercell
