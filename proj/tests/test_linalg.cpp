#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "reductionlab/errors.hpp"
#include "reductionlab/linalg.hpp"
#include "reductionlab/random.hpp"
#include "reductionlab/zoo.hpp"

using namespace reductionlab;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

ComplexMatrix bell_phi_plus() { return ComplexMatrix::outer({kS, 0.0, 0.0, kS}); }

}  // namespace

TEST_CASE("tensor of identities is identity") {
  CHECK(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
}

TEST_CASE("tensor block layout puts the left factor outermost") {
  const auto m = tensor(ComplexMatrix::diagonal({1.0, -1.0}), ComplexMatrix::identity(2));
  CHECK(m == ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0}));
}

TEST_CASE("tensor matches the brute-force Kronecker product") {
  Rng rng(3);
  for (std::size_t d1 = 1; d1 <= 3; ++d1)
    for (std::size_t d2 = 1; d2 <= 4; ++d2) {
      const auto a = random_ginibre(rng, d1);
      const auto b = random_ginibre(rng, d2);
      CHECK(oracle::max_diff(oracle::kron(oracle::from(a), oracle::from(b)), tensor(a, b)) == 0.0);
    }
}

TEST_CASE("tensor is associative") {
  Rng rng(5);
  const auto a = random_ginibre(rng, 2);
  const auto b = random_ginibre(rng, 3);
  const auto c = random_ginibre(rng, 2);
  CHECK(max_deviation(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-14);
  CHECK(max_deviation(tensor({a, b, c}), tensor(a, tensor(b, c))) < 1e-14);
}

TEST_CASE("partial trace of a product keeps the factor scaled by the other trace") {
  Rng rng(7);
  const auto a = random_ginibre(rng, 3);
  const auto b = random_ginibre(rng, 2);
  const SubsystemDims dims{3, 2};
  CHECK(max_deviation(partial_trace(tensor(a, b), dims, {0}), a * b.trace()) < 1e-13);
  CHECK(max_deviation(partial_trace(tensor(a, b), dims, {1}), b * a.trace()) < 1e-13);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  const auto r = partial_trace(bell_phi_plus(), {2, 2}, {0});
  CHECK(max_deviation(r, ComplexMatrix::identity(2) * 0.5) < 1e-15);
}

TEST_CASE("partial trace agrees with the brute-force loop") {
  Rng rng(11);
  for (std::size_t d1 = 1; d1 <= 4; ++d1)
    for (std::size_t d2 = 1; d2 <= 4; ++d2) {
      const auto m = random_ginibre(rng, d1 * d2);
      const auto om = oracle::from(m);
      CHECK(oracle::max_diff(oracle::trace_second(om, d1, d2), partial_trace(m, {d1, d2}, {0})) < 1e-13);
      CHECK(oracle::max_diff(oracle::trace_first(om, d1, d2), partial_trace(m, {d1, d2}, {1})) < 1e-13);
    }
}

TEST_CASE("partial trace over three factors") {
  Rng rng(13);
  const auto a = random_ginibre(rng, 2);
  const auto b = random_ginibre(rng, 3);
  const auto c = random_ginibre(rng, 2);
  const SubsystemDims dims{2, 3, 2};
  const auto m = tensor({a, b, c});
  CHECK(max_deviation(partial_trace(m, dims, {0, 2}), tensor(a, c) * b.trace()) < 1e-13);
  CHECK(max_deviation(partial_trace(m, dims, {1}), b * (a.trace() * c.trace())) < 1e-13);
  // Nested traces compose.
  const auto ac = partial_trace(m, dims, {0, 2});
  CHECK(max_deviation(partial_trace(ac, {2, 2}, {0}), partial_trace(m, dims, {0})) < 1e-13);
}

TEST_CASE("partial trace rejects bad keep sets") {
  const auto m = ComplexMatrix::identity(4);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {}), DimensionError);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {0, 1}), DimensionError);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {2}), DimensionError);
  CHECK_THROWS_AS(partial_trace(m, {2, 3}, {0}), DimensionError);
}

TEST_CASE("permute_subsystems reorders factors") {
  Rng rng(17);
  const auto a = random_ginibre(rng, 2);
  const auto b = random_ginibre(rng, 3);
  const auto c = random_ginibre(rng, 4);
  const SubsystemDims dims{2, 3, 4};
  const auto m = tensor({a, b, c});
  CHECK(max_deviation(permute_subsystems(m, dims, {0, 2, 1}), tensor({a, c, b})) < 1e-14);
  CHECK(max_deviation(permute_subsystems(m, dims, {2, 0, 1}), tensor({c, a, b})) < 1e-14);
  CHECK(permute_subsystems(m, dims, {0, 1, 2}) == m);
  const std::vector<std::size_t> order{2, 0, 1};
  CHECK(permuted_dims(dims, order) == SubsystemDims{4, 2, 3});
}

TEST_CASE("permute_subsystems on a non-product operator round-trips") {
  Rng rng(19);
  const auto m = random_ginibre(rng, 12);
  const SubsystemDims dims{2, 3, 2};
  const auto p = permute_subsystems(m, dims, {1, 2, 0});
  const auto back = permute_subsystems(p, {3, 2, 2}, {2, 0, 1});
  CHECK(back == m);
}

TEST_CASE("swap gate agrees with a two-factor permutation") {
  Rng rng(23);
  const auto a = random_ginibre(rng, 3);
  const auto b = random_ginibre(rng, 3);
  const auto s = swap_gate(3);
  CHECK(max_deviation(s * tensor(a, b) * s.adjoint(), tensor(b, a)) < 1e-14);
}

TEST_CASE("herm_expm of zero is identity") {
  CHECK(max_deviation(herm_expm(ComplexMatrix::zero(3), 1.7), ComplexMatrix::identity(3)) < 1e-15);
}

TEST_CASE("herm_expm of diag(1,-1) at pi is minus identity") {
  const auto u = herm_expm(ComplexMatrix::diagonal({1.0, -1.0}), std::numbers::pi);
  CHECK(max_deviation(u, ComplexMatrix::identity(2) * -1.0) < 1e-15);
}

TEST_CASE("herm_expm matches a Taylor series and satisfies the group law") {
  Rng rng(29);
  for (std::size_t d = 1; d <= 5; ++d) {
    const auto h = random_hermitian(rng, d);
    const double t1 = 0.37 * static_cast<double>(d);
    const double t2 = -1.1;
    const auto u = herm_expm(h, t1);
    CHECK(oracle::max_diff(oracle::expm_taylor(oracle::from(h), t1), u) < 1e-10);
    CHECK(is_unitary(u));
    CHECK(max_deviation(herm_expm(h, t1) * herm_expm(h, t2), herm_expm(h, t1 + t2)) < 1e-12);
  }
}

TEST_CASE("herm_expm rejects non-Hermitian input") {
  CHECK_THROWS_AS(herm_expm(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, 1.0), DomainError);
}

TEST_CASE("spectral_decompose of diag(1,-1)") {
  const auto s = spectral_decompose(ComplexMatrix::diagonal({1.0, -1.0}));
  REQUIRE(s.size() == 2);
  CHECK(s[0].eigenvalue == doctest::Approx(-1.0));
  CHECK(max_deviation(s[0].projection, ComplexMatrix::unit(2, 1, 1)) < 1e-14);
  CHECK(s[1].eigenvalue == doctest::Approx(1.0));
  CHECK(max_deviation(s[1].projection, ComplexMatrix::unit(2, 0, 0)) < 1e-14);
}

TEST_CASE("spectral_decompose of the identity is one cluster") {
  const auto s = spectral_decompose(ComplexMatrix::identity(3));
  REQUIRE(s.size() == 1);
  CHECK(s[0].eigenvalue == doctest::Approx(1.0));
  CHECK(max_deviation(s[0].projection, ComplexMatrix::identity(3)) < 1e-14);
}

TEST_CASE("spectral_decompose of Pauli-X") {
  const auto s = spectral_decompose(pauli_x());
  REQUIRE(s.size() == 2);
  CHECK(s[0].eigenvalue == doctest::Approx(-1.0));
  CHECK(max_deviation(s[0].projection, ComplexMatrix::outer({kS, -kS})) < 1e-14);
  CHECK(s[1].eigenvalue == doctest::Approx(1.0));
  CHECK(max_deviation(s[1].projection, ComplexMatrix::outer({kS, kS})) < 1e-14);
}

TEST_CASE("spectral_decompose clusters near-degenerate eigenvalues") {
  const auto s = spectral_decompose(ComplexMatrix::diagonal({0.0, 1e-10, 1.0}));
  REQUIRE(s.size() == 2);
  CHECK(max_deviation(s[0].projection, ComplexMatrix::diagonal({1.0, 1.0, 0.0})) < 1e-14);
}

TEST_CASE("spectral resolution reconstructs random Hermitian matrices") {
  Rng rng(31);
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto h = random_hermitian(rng, d);
    ComplexMatrix sum = ComplexMatrix::zero(d);
    ComplexMatrix id = ComplexMatrix::zero(d);
    for (const auto& p : spectral_decompose(h)) {
      CHECK(is_projection(p.projection));
      sum += p.projection * p.eigenvalue;
      id += p.projection;
    }
    CHECK(max_deviation(sum, h) < 1e-12);
    CHECK(max_deviation(id, ComplexMatrix::identity(d)) < 1e-12);
  }
}

TEST_CASE("predicates") {
  CHECK(is_hermitian(pauli_y()));
  CHECK_FALSE(is_hermitian(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}));
  CHECK(is_unitary(pauli_y()));
  CHECK_FALSE(is_unitary(ComplexMatrix::diagonal({1.0, 0.5})));
  CHECK(is_positive_semidefinite(ComplexMatrix::diagonal({0.0, 0.5})));
  CHECK_FALSE(is_positive_semidefinite(pauli_z()));
  CHECK(is_projection(ComplexMatrix::unit(3, 1, 1)));
  CHECK_FALSE(is_projection(ComplexMatrix::identity(2) * 0.5));
  CHECK(min_eigenvalue(pauli_z()) == doctest::Approx(-1.0));
}

TEST_CASE("NaN entries are never masked") {
  ComplexMatrix m = ComplexMatrix::identity(2);
  m(1, 0) = Complex(std::nan(""), 0.0);
  CHECK(std::isnan(max_norm(m)));
  CHECK(std::isnan(worst_of(0.5, std::nan(""))));
  CHECK(std::isnan(worst_of(std::nan(""), 0.5)));
  CHECK(worst_of(0.5, 0.25) == 0.5);
}
