#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "reductionlab/errors.hpp"
#include "reductionlab/quantum.hpp"
#include "reductionlab/random.hpp"
#include "reductionlab/zoo.hpp"

using namespace reductionlab;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

// Born probabilities by direct quadratic forms over a closed-form eigenbasis.
double born_pure(std::initializer_list<Complex> eigvec, const oracle::Mat& rho) {
  std::vector<Complex> v(eigvec);
  Complex s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += std::conj(v[i]) * rho(i, j) * v[j];
  return s.real();
}

}  // namespace

TEST_CASE("observable exposes its clustered spectrum") {
  const Observable a(ComplexMatrix::diagonal({2.0, 0.0, 2.0}));
  CHECK(a.outcome_count() == 2);
  CHECK(a.eigenvalues() == std::vector<double>{0.0, 2.0});
  CHECK(a.index_of(2.0 + 1e-10) == 1u);
  CHECK_FALSE(a.index_of(1.0).has_value());
  CHECK(max_deviation(a.projection(2.0), ComplexMatrix::diagonal({1.0, 0.0, 1.0})) == 0.0);
  CHECK_THROWS_AS(a.projection(1.0), DomainError);
  CHECK_THROWS_AS(Observable(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), DomainError);
}

TEST_CASE("same_spectrum compares sorted clustered eigenvalues") {
  CHECK(same_spectrum(Observable(pauli_x()), Observable(pauli_z())));
  CHECK_FALSE(same_spectrum(Observable(pauli_x()), Observable(ComplexMatrix::diagonal({0.0, 1.0}))));
  CHECK_FALSE(same_spectrum(Observable(pauli_z()), Observable(ComplexMatrix::identity(2))));
}

TEST_CASE("density operator validation") {
  CHECK_NOTHROW(DensityOperator(ComplexMatrix::identity(2) * 0.5));
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix::identity(2)), ValidationError);
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix::diagonal({1.5, -0.5})), ValidationError);
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix{{0.5, 0.5}, {0.0, 0.5}}), ValidationError);
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix::identity(4) * 0.25, SubsystemDims{2, 3}), DimensionError);
  CHECK_THROWS_AS(DensityOperator::pure({0.0, 0.0}), ValidationError);
  // Small negative eigenvalues from roundoff are tolerated.
  CHECK_NOTHROW(DensityOperator(ComplexMatrix::diagonal({1.0 + 1e-11, -1e-11})));
}

TEST_CASE("pure states are normalized") {
  const auto rho = DensityOperator::pure({1.0, 1.0});
  CHECK(max_deviation(rho.matrix(), ComplexMatrix::outer({kS, kS})) < 1e-15);
  CHECK(max_deviation(DensityOperator::maximally_mixed(3).matrix(), ComplexMatrix::identity(3) * (1.0 / 3)) == 0.0);
}

TEST_CASE("outcome distribution validation") {
  CHECK_THROWS_AS(OutcomeDistribution({{0.0, 0.6}, {1.0, 0.6}}), ValidationError);
  CHECK_THROWS_AS(OutcomeDistribution({{0.0, -0.1}, {1.0, 1.1}}), ValidationError);
  const OutcomeDistribution d({{1.0, 0.25}, {-1.0, 0.75}});
  CHECK(d.entries().front().first == -1.0);
  CHECK(d.probability(1.0) == 0.25);
  CHECK(d.probability(3.0) == 0.0);
}

TEST_CASE("born distribution examples") {
  const Observable z(ComplexMatrix::diagonal({1.0, -1.0}));
  auto d = born_distribution(z, DensityOperator::pure({1.0, 0.0}));
  CHECK(d.probability(1.0) == doctest::Approx(1.0));
  CHECK(d.probability(-1.0) == doctest::Approx(0.0));

  d = born_distribution(z, DensityOperator::maximally_mixed(2));
  CHECK(d.probability(1.0) == doctest::Approx(0.5));
  CHECK(d.probability(-1.0) == doctest::Approx(0.5));

  d = born_distribution(Observable(pauli_x()), DensityOperator::pure({1.0, 0.0}));
  CHECK(std::abs(d.probability(1.0) - 0.5) < 1e-15);
  CHECK(std::abs(d.probability(-1.0) - 0.5) < 1e-15);

  CHECK_THROWS_AS(born_distribution(z, DensityOperator::maximally_mixed(3)), DimensionError);
}

TEST_CASE("born distribution of Pauli-Y matches closed-form eigenvectors") {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density(rng, 2);
    const auto orho = oracle::from(rho.matrix());
    const auto d = born_distribution(Observable(pauli_y()), rho);
    CHECK(std::abs(d.probability(1.0) - born_pure({kS, Complex(0.0, kS)}, orho)) < 1e-14);
    CHECK(std::abs(d.probability(-1.0) - born_pure({kS, Complex(0.0, -kS)}, orho)) < 1e-14);
  }
}

TEST_CASE("evolve examples") {
  Rng rng(41);
  const auto rho = random_density(rng, 3);
  CHECK(max_deviation(evolve(rho, ComplexMatrix::zero(3), 2.5).matrix(), rho.matrix()) < 1e-15);
  const auto zero = DensityOperator::pure({1.0, 0.0});
  CHECK(max_deviation(evolve(zero, ComplexMatrix::diagonal({1.0, -1.0}), 0.9).matrix(), zero.matrix()) < 1e-15);
  CHECK_THROWS_AS(evolve(rho, ComplexMatrix::zero(2), 1.0), DimensionError);
}

TEST_CASE("evolve agrees with Taylor-series propagation") {
  Rng rng(43);
  for (std::size_t d = 2; d <= 4; ++d) {
    const auto rho = random_density(rng, d);
    const auto h = random_hermitian(rng, d);
    const auto u = oracle::expm_taylor(oracle::from(h), 1.3);
    const auto expect = oracle::mul(oracle::mul(u, oracle::from(rho.matrix())), oracle::dagger(u));
    CHECK(oracle::max_diff(expect, evolve(rho, h, 1.3).matrix()) < 1e-10);
  }
}

TEST_CASE("rule1 distribution") {
  Rng rng(47);
  const auto rho = random_density(rng, 3);
  const auto h = random_hermitian(rng, 3);
  const Observable x(random_hermitian(rng, 3));
  CHECK(max_deviation(rule1_distribution(rho, h, x, 0.0), born_distribution(x, rho)) < 1e-15);
  const auto zero_h = ComplexMatrix::zero(3);
  CHECK(max_deviation(rule1_distribution(rho, zero_h, x, 0.4), rule1_distribution(rho, zero_h, x, 3.1)) < 1e-14);

  // Independent path: Heisenberg picture, Tr[U† E U rho] with a Taylor U.
  const double tau = 0.8;
  const auto u = oracle::expm_taylor(oracle::from(h), tau);
  const auto orho = oracle::from(rho.matrix());
  const auto dist = rule1_distribution(rho, h, x, tau);
  for (const auto& p : x.spectrum()) {
    const auto heis = oracle::mul(oracle::mul(oracle::dagger(u), oracle::from(p.projection)), u);
    CHECK(std::abs(oracle::trace(oracle::mul(heis, orho)).real() - dist.probability(p.eigenvalue)) < 1e-10);
  }
}

TEST_CASE("reduced_state examples") {
  Rng rng(53);
  const auto r1 = random_density(rng, 2);
  const auto r2 = random_density(rng, 3);
  const DensityOperator prod(tensor(r1.matrix(), r2.matrix()), SubsystemDims{2, 3});
  CHECK(max_deviation(reduced_state(prod, {0}).matrix(), r1.matrix()) < 1e-14);
  CHECK(max_deviation(reduced_state(prod, {1}).matrix(), r2.matrix()) < 1e-14);

  const DensityOperator bell(ComplexMatrix::outer({kS, 0.0, 0.0, kS}), SubsystemDims{2, 2});
  CHECK(max_deviation(reduced_state(bell, {0}).matrix(), ComplexMatrix::identity(2) * 0.5) < 1e-15);

  const DensityOperator plain(ComplexMatrix::identity(4) * 0.25);
  CHECK_THROWS_AS(reduced_state(plain, {0}), DimensionError);
  CHECK_NOTHROW(reduced_state(plain, SubsystemDims{2, 2}, {0}));
}

TEST_CASE("reduced state commutes with product-Hamiltonian evolution") {
  Rng rng(59);
  const auto rho = random_density(rng, 6);
  const DensityOperator rho12(rho.matrix(), SubsystemDims{2, 3});
  const auto h1 = random_hermitian(rng, 2);
  const auto h2 = random_hermitian(rng, 3);
  const auto h = tensor(h1, ComplexMatrix::identity(3)) + tensor(ComplexMatrix::identity(2), h2);
  const DensityOperator evolved(evolve(rho12, h, 0.7).matrix(), SubsystemDims{2, 3});
  CHECK(max_deviation(reduced_state(evolved, {0}).matrix(), evolve(reduced_state(rho12, {0}), h1, 0.7).matrix()) <
        1e-12);
  CHECK(max_deviation(reduced_state(evolved, {1}).matrix(), evolve(reduced_state(rho12, {1}), h2, 0.7).matrix()) <
        1e-12);
}
