#pragma once

// Counter-based, splittable generator. Output k of stream `key` is
// mix64(key + (k + 1) * 0x9E3779B97F4A7C15), where mix64 is the SplitMix64
// finalizer and key = mix64(seed ^ mix64(stream_id)). split(i) derives a
// child key from (key, i), so independent experiment cells draw from
// disjoint, order-independent streams. Normals use Box-Muller without
// caching; nothing here depends on <random> distribution implementations.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace schlab {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : key_(mix64(seed ^ mix64(stream))) {}

  CounterRng split(std::uint64_t child) const {
    CounterRng r(0);
    r.key_ = mix64(key_ ^ mix64(child + 0xD1B54A32D192ED03ULL));
    return r;
  }

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

  // [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on {0, ..., n-1}; n > 0.
  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> complex_normal() { return {normal() / std::numbers::sqrt2, normal() / std::numbers::sqrt2}; }

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace schlab
