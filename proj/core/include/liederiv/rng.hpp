#pragma once

// Seeded random values with a pinned construction: raw mt19937_64 output
// mapped to doubles through the top 53 bits. std::* distributions are
// implementation-defined, so they are avoided; this generator produces
// identical streams on every conforming platform.

#include <complex>
#include <cstdint>
#include <random>

#include "liederiv/algebra.hpp"

namespace liederiv {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-1, 1).
  double uniform_sym() { return 2.0 * uniform() - 1.0; }

  std::complex<double> complex_uniform() {
    const double re = uniform_sym();
    const double im = uniform_sym();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
};

/// Entries uniform in [-1,1) x [-1,1)i, block by block, row-major.
AlgebraElement random_element(const StarAlgebra& algebra, Rng& rng);

/// random_element with the per-block trace projected out.
AlgebraElement random_traceless(const StarAlgebra& algebra, Rng& rng);

/// Random central weights, one per block.
std::vector<CentralElement> random_weights(const StarAlgebra& algebra,
                                           Rng& rng);

/// A projection with the given per-block ranks, conjugated by a random
/// unitary (QR of a random matrix). Hermitian and idempotent to roundoff.
AlgebraElement random_projection(const StarAlgebra& algebra,
                                 const std::vector<int>& ranks, Rng& rng);

}  // namespace liederiv
