#pragma once

// Deterministic random streams. The engine is mt19937_64 (bit-exact across
// platforms); the distribution transforms are implemented here because the
// standard library ones are implementation-defined and would break the
// byte-identical-replay contract.

#include <cmath>
#include <cstdint>
#include <random>

#include "edgecast/errors.hpp"

namespace edgecast::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Index in [0, n). n must be positive.
  std::uint32_t uniform_index(std::uint32_t n) {
    if (n == 0) throw invalid_input_error("uniform_index: n must be positive");
    return static_cast<std::uint32_t>(eng_() % n);
  }

  /// Exponential draw with the given rate (mean 1/rate).
  double exponential(double rate) {
    if (!(rate > 0.0)) throw invalid_input_error("exponential: rate must be positive");
    // uniform01() < 1, so log1p argument stays in (-1, 0].
    return -std::log1p(-uniform01()) / rate;
  }

  /// Gaussian draw via Box-Muller; caches the spare deviate.
  double normal(double mean, double sigma) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + sigma * spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return mean + sigma * r * std::cos(theta);
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Named substreams of a scenario seed, so changing one knob does not
/// perturb unrelated draw sequences.
enum class Substream : std::uint64_t {
  arrivals = 0x61727276ull,   // "arrv"
  locations = 0x6C6F6373ull,  // "locs"
  service = 0x73657276ull,    // "serv"
};

inline Stream substream(std::uint64_t master_seed, Substream which) {
  return Stream(splitmix64(master_seed ^ static_cast<std::uint64_t>(which)));
}

}  // namespace edgecast::rng
