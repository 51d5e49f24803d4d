#pragma once

#include <cmath>
#include <cstdint>

// Counter-based splittable randomness. Every consumer derives its own stream
// from (seed, tag...) so results do not depend on evaluation order or thread
// schedule, and are identical across platforms (no std:: distributions).
namespace srs::rng {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Independent 64-bit value for a (seed, a, b, c) coordinate.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = mix64(seed ^ 0x6A09E667F3BCC909ull);
  h = mix64(h ^ mix64(a));
  h = mix64(h ^ mix64(b ^ 0x9E3779B97F4A7C15ull));
  h = mix64(h ^ mix64(c ^ 0x3C6EF372FE94F82Bull));
  return h;
}

// Double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

constexpr bool to_coin(std::uint64_t x) { return (x >> 63) != 0; }

// Sequential stream (splitmix64) rooted at a derived state.
class Stream {
 public:
  explicit Stream(std::uint64_t state) : state_(state) {}
  static Stream from(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                     std::uint64_t c = 0) {
    return Stream(derive(seed, a, b, c));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double next_unit() { return to_unit(next()); }

  // Uniform integer in [0, n) by rejection-free scaling (n << 2^64 here).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n)) % n;
  }

  // Standard normal via Box-Muller.
  double next_normal() {
    double u1 = next_unit();
    double u2 = next_unit();
    if (u1 <= 0) u1 = 0x1.0p-53;
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace srs::rng
