#include "reductionlab/random.hpp"

#include <cmath>
#include <numbers>

#include "reductionlab/errors.hpp"

namespace reductionlab {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

std::size_t Rng::between(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw DomainError("Rng::between: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::size_t>(engine_() % span);
}

ComplexMatrix random_ginibre(Rng& rng, std::size_t dim) {
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  return g;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = random_ginibre(rng, dim);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g.eigen());
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return ComplexMatrix(std::move(q));
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = random_ginibre(rng, dim);
  return (g + g.adjoint()) * Complex(0.5);
}

DensityOperator random_density(Rng& rng, std::size_t dim, std::size_t rank) {
  if (rank == 0 || rank > dim) throw DomainError("random_density: rank must be in [1, dim]");
  Eigen::MatrixXcd g(dim, rank);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  Eigen::MatrixXcd m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityOperator(ComplexMatrix(std::move(m)));
}

DensityOperator random_density(Rng& rng, std::size_t dim) {
  return random_density(rng, dim, rng.between(1, dim));
}

}  // namespace reductionlab
