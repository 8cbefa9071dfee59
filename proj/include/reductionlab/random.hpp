#pragma once

// Seeded generators for fixtures and property sweeps.
//
// The bit stream is std::mt19937_64 (MT19937-64, whose output sequence is
// fixed by the C++ standard). Doubles and Gaussians are derived by hand so
// that any implementation of MT19937-64 reproduces the same values:
//   uniform() = (next >> 11) * 2^-53               in [0, 1)
//   normal()  = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)  one Box-Muller draw per call
// Complex Gaussians draw the real part first, then the imaginary part.

#include <cstdint>
#include <random>

#include "reductionlab/linalg.hpp"
#include "reductionlab/quantum.hpp"

namespace reductionlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();
  Complex complex_normal();
  // Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi);

 private:
  std::mt19937_64 engine_;
};

// Ginibre matrix of complex standard normals, row-major fill.
ComplexMatrix random_ginibre(Rng& rng, std::size_t dim);
// QR of a Ginibre matrix with the phases of R's diagonal absorbed into Q.
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);
ComplexMatrix random_hermitian(Rng& rng, std::size_t dim);
// G G^dagger / Tr for a dim x rank Ginibre block G.
DensityOperator random_density(Rng& rng, std::size_t dim, std::size_t rank);
DensityOperator random_density(Rng& rng, std::size_t dim);

}  // namespace reductionlab
