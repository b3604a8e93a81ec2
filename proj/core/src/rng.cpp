#include "rigidpoints/rng.hpp"

#include <cmath>

namespace rigidpoints {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngState::RngState(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  // Counter-mix: fold the stream index into the SplitMix64 counter so
  // that streams 0,1,2,... of one master seed are unrelated sequences.
  std::uint64_t x = seed ^ (0x9e6c63d0876a9a35ULL * (stream + 1));
  for (auto& w : s_) w = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RngState::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngState::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngState::next_double_open() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

Complex RngState::next_complex_gaussian() {
  // |xi|^2 = -log(u1) ~ Exp(1), uniform phase: E|xi|^2 = 1.
  const double u1 = next_double_open();
  const double u2 = next_double();
  const double r = std::sqrt(-std::log(u1));
  return Complex(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
}

double RngState::next_real_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const double u1 = next_double_open();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_gaussian_ = r * std::sin(kTwoPi * u2);
  has_cached_gaussian_ = true;
  return r * std::cos(kTwoPi * u2);
}

Complex RngState::next_in_disk(Complex center, double radius) {
  const double r = radius * std::sqrt(next_double());
  const double theta = kTwoPi * next_double();
  return center + Complex(r * std::cos(theta), r * std::sin(theta));
}

}  // namespace rigidpoints
