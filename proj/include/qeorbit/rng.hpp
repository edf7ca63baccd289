#pragma once

#include <cstdint>

namespace qeorbit {

/// SplitMix64, used only to expand a 64-bit seed into generator state.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next();
};

/// xoshiro256++ with SplitMix64 seeding.  Streams are the canonical
/// non-overlapping 2^128-step jump subsequences: stream i starts after i
/// jumps from the seeded state, so (seed, stream) pins a bit-exact sequence.
class Xoshiro256pp {
public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  void jump();

private:
  std::uint64_t s_[4];
};

/// Standard normal variates by the Marsaglia polar method (log/sqrt only;
/// no trigonometric libm calls).  Owns its uniform source.
class GaussianStream {
public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : rng_(seed, stream) {}

  double next();
  Xoshiro256pp& engine() { return rng_; }

private:
  Xoshiro256pp rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qeorbit
