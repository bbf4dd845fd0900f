#pragma once

#include <cmath>
#include <cstdint>

namespace relayrate {

// splitmix64 step; also used as the stream-splitting hash.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Small deterministic generator with cheap hierarchical stream splitting.
/// Identical seeds give bit-identical sequences on every platform, which the
/// reproducibility contracts rely on (std::<random> distributions do not
/// guarantee that across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  /// Child stream; forks of the same (seed, stream) pair coincide, forks of
  /// distinct streams are effectively independent.
  Rng fork(std::uint64_t stream) const { return Rng(mix64(state_ ^ mix64(stream + 1))); }

  /// Uniform on (0, 1] (never 0, so log() is always finite).
  double uniform01() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Exp(1) sample.
  double exponential() { return -std::log(uniform01()); }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace relayrate
