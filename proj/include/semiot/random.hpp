#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace semiot {

/// Seeded generator with platform-independent draws.
///
/// Only the raw mt19937_64 stream is used; the standard distributions are
/// implementation-defined, so uniform and normal variates are derived here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n > 0. Rejection sampling, no modulo bias.
  std::size_t index(std::size_t n);
  /// Standard normal (Box-Muller, one value per call).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace semiot
