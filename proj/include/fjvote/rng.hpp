#pragma once

#include <cstdint>

namespace fjvote {

/// splitmix64 generator. Used instead of <random> distributions because the
/// experiment outputs must be byte-identical across reruns and standard-library
/// distribution implementations are not pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent stream derived from (seed, a, b). Every grid cell / trial
  /// gets its own stream so worker scheduling cannot perturb results.
  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = seed;
    h = mix(h + 0x9e3779b97f4a7c15ULL * (a + 1));
    h = mix(h + 0x9e3779b97f4a7c15ULL * (b + 1));
    return Rng(h);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_positive() { return 1.0 - next_double(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace fjvote
