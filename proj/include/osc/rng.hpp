#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace osc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Per-trial random stream: mt19937_64 seeded from (seed, stream) so that
/// trial j is reproducible in isolation and independent of scheduling.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream)
      : eng_(splitmix64(seed + splitmix64(stream + 1))) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform on {0, ..., n-1} without modulo bias.
  int uniform_int(int n) {
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return static_cast<int>(x % span);
  }

  int sign() { return (eng_() & 1) ? 1 : -1; }

  /// Uniform in (0, 1); never 0, so safe under log.
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Circular complex gaussian CN(0, 1) via Box-Muller.
  std::complex<double> gaussian() {
    double r = std::sqrt(-std::log(uniform01()));
    double theta = 2.0 * std::numbers::pi * uniform01();
    return std::polar(r, theta);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace osc
