#pragma once

// Portable seeded randomness: mt19937_64 bits turned into doubles by hand so
// streams are identical on every standard library.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

#include "orbithull/algebra.hpp"

namespace orbithull {

/// splitmix64 finalizer folded over the inputs; derives independent seeds
/// from (seed, n, trial, ...) tuples.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (std::uint64_t p : parts) {
    h ^= p + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = h;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    h = z ^ (z >> 31);
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  int below(int n) { return static_cast<int>(uniform() * n); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return radius * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary (QR of a complex Gaussian matrix with phase fix).
Matrix random_unitary(int n, Rng& rng);
BlockMatrix random_unitary(const Algebra& alg, Rng& rng);

/// Contraction ‖d‖ ≤ 1: a Gaussian matrix scaled below its spectral norm.
BlockMatrix random_contraction(const Algebra& alg, Rng& rng);

/// U diag(λ) U* with λ uniform on [lo, hi] and U Haar.
HermitianElement random_hermitian(const Algebra& alg, Rng& rng, double lo = -1.0, double hi = 1.0);

/// Random nonnegative weights summing to one.
std::vector<double> random_weights(int count, Rng& rng);

}  // namespace orbithull
