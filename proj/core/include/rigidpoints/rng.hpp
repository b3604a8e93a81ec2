#pragma once

#include <cstdint>

#include "rigidpoints/common.hpp"

namespace rigidpoints {

// Counter-mixed per-replica random stream. State derivation hashes
// (seed, stream) through SplitMix64 so that a fixed seed yields an
// arbitrary family of statistically independent substreams; the generator
// itself is xoshiro256++. Identical (seed, stream) gives an identical
// draw sequence on every platform (no libstdc++ distributions involved).
class RngState {
 public:
  RngState(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53 random bits.
  double next_double();
  // Uniform on (0,1]; safe as a log() argument.
  double next_double_open();

  // Standard complex Gaussian, E|xi|^2 = 1 (real and imaginary parts are
  // independent N(0, 1/2)). Box-Muller on two uniforms.
  Complex next_complex_gaussian();

  // Real N(0,1).
  double next_real_gaussian();

  // Uniform point in the closed disk of the given radius about `center`.
  Complex next_in_disk(Complex center, double radius);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

// Free-function alias matching the operation vocabulary used throughout.
inline Complex sample_standard_complex_gaussian(RngState& rng) {
  return rng.next_complex_gaussian();
}

}  // namespace rigidpoints
