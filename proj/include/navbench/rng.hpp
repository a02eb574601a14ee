#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace navbench {

// Deterministic PRNG stack used for all simulated noise.  The exact
// algorithms are part of the log-replay contract: a log produced with a
// given seed must be reproducible bit-for-bit, including by other
// implementations of the same generators.
//
//   seeding   : SplitMix64
//   generator : xoshiro256++ (state filled from SplitMix64)
//   uniform   : top 53 bits -> double in [0, 1)
//   gaussian  : Box-Muller, cosine branch only, exactly two uniforms per draw

struct SplitMix64 {
  std::uint64_t state;

  explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_.next(); }

  // [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(gen_.next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // N(0, sigma^2); consumes exactly two uniforms
  double gaussian(double sigma) {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  Xoshiro256pp gen_;
};

// Stream split used by the run loop: stream 0 feeds the range sensor,
// stream 1 feeds actuation disturbance.  Order is part of the replay contract.
inline std::uint64_t split_seed(std::uint64_t master, int stream) {
  SplitMix64 sm(master);
  std::uint64_t s = 0;
  for (int i = 0; i <= stream; ++i) s = sm.next();
  return s;
}

}  // namespace navbench
