#include "reductionlab/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reductionlab/errors.hpp"
#include "reductionlab/random.hpp"

namespace reductionlab {

namespace {

ComplexMatrix cyclic_shift(std::size_t levels, std::size_t power) {
  ComplexMatrix s(levels);
  for (std::size_t j = 0; j < levels; ++j) s((j + power) % levels, j) = 1.0;
  return s;
}

DensityOperator ground_state(std::size_t dim) {
  return DensityOperator(ComplexMatrix::unit(dim, 0, 0));
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) * Complex(0.5); }

}  // namespace

ComplexMatrix pauli_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return ComplexMatrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix pauli_z() { return ComplexMatrix::diagonal({1.0, -1.0}); }

ComplexMatrix swap_gate(std::size_t dim) {
  ComplexMatrix s(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) s(j * dim + i, i * dim + j) = 1.0;
  return s;
}

ZooEntry cnot_qubit_model() {
  const ComplexMatrix cnot{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
  return {"cnot",
          MeasurementModel(ground_state(2), cnot, Observable(pauli_z()), Observable(pauli_z())),
          true,
          "CNOT copies the Pauli-Z basis of the object into a qubit pointer prepared in |0>"};
}

ZooEntry swap_replace_model(const DensityOperator& sigma_out, const Observable& a_obs) {
  if (sigma_out.dim() != a_obs.dim())
    throw DimensionError("swap_replace_model: sigma_out dim " + std::to_string(sigma_out.dim()) +
                         " differs from observable dim " + std::to_string(a_obs.dim()));
  bool projective = true;
  for (const auto& s : a_obs.spectrum()) {
    const bool rank_one = std::abs(s.projection.trace().real() - 1.0) <= kTolOp;
    projective = projective && rank_one && max_deviation(sigma_out.matrix(), s.projection) <= kTolOp;
  }
  return {"swap_replace",
          MeasurementModel(sigma_out, swap_gate(a_obs.dim()), Observable(a_obs.matrix()), a_obs),
          projective,
          "SWAP hands the object's state to the pointer and leaves sigma_out behind for every outcome"};
}

ZooEntry controlled_shift_model(const Observable& a_obs) {
  const std::size_t n = a_obs.outcome_count();
  ComplexMatrix u(a_obs.dim() * n);
  for (std::size_t k = 0; k < n; ++k) u += tensor(a_obs.spectrum()[k].projection, cyclic_shift(n, k));
  return {"controlled_shift",
          MeasurementModel(ground_state(n), u, Observable(ComplexMatrix::diagonal(a_obs.eigenvalues())),
                           a_obs),
          true,
          "pointer shifted by k levels on the k-th eigenspace of A"};
}

ZooEntry random_indirect_model(std::uint64_t seed, std::size_t object_dim, std::size_t apparatus_dim) {
  if (object_dim == 0 || apparatus_dim == 0)
    throw DimensionError("random_indirect_model: dimensions must be positive");
  Rng rng(seed);
  const std::size_t d = object_dim;
  const std::size_t m = apparatus_dim;
  const std::size_t cap = std::min(d, m);
  const std::size_t n = rng.between(std::min<std::size_t>(2, cap), cap);

  // Integer spectrum with gaps of 1..3 starting in [-2, 2].
  std::vector<double> values;
  double v = static_cast<double>(rng.between(0, 4)) - 2.0;
  for (std::size_t k = 0; k < n; ++k) {
    values.push_back(v);
    v += static_cast<double>(rng.between(1, 3));
  }
  std::vector<double> diag(d);
  for (std::size_t j = 0; j < d; ++j) diag[j] = values[j < n ? j : rng.between(0, n - 1)];
  const ComplexMatrix basis = random_unitary(rng, d);
  const Observable a_obs(hermitian_part(basis * ComplexMatrix::diagonal(diag) * basis.adjoint()));

  // Pointer levels beyond n are never reached from |0>; they share the last label.
  std::vector<ComplexMatrix> pointer_proj(n, ComplexMatrix::zero(m));
  for (std::size_t j = 0; j < m; ++j) pointer_proj[std::min(j, n - 1)](j, j) = 1.0;
  ComplexMatrix u(d * m);
  for (std::size_t k = 0; k < n; ++k) u += tensor(a_obs.spectrum()[k].projection, cyclic_shift(m, k));

  const ComplexMatrix w = random_unitary(rng, m);
  const ComplexMatrix id_s = ComplexMatrix::identity(d);
  const ComplexMatrix lifted_w = tensor(id_s, w);
  u = lifted_w * u * lifted_w.adjoint();
  const ComplexMatrix sigma = hermitian_part(w * ComplexMatrix::unit(m, 0, 0) * w.adjoint());
  ComplexMatrix probe = ComplexMatrix::zero(m);
  ComplexMatrix feedback(d * m);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix rotated = hermitian_part(w * pointer_proj[k] * w.adjoint());
    probe += rotated * Complex(values[k]);
    feedback += tensor(random_unitary(rng, d), rotated);
  }
  u = feedback * u;

  return {"random_s" + std::to_string(seed) + "_" + std::to_string(d) + "x" + std::to_string(m),
          MeasurementModel(DensityOperator(sigma), u, Observable(hermitian_part(probe)), a_obs),
          d == 1,
          "seeded controlled shift, rotated pointer basis, outcome-controlled feedback on the object"};
}

std::vector<ZooEntry> standard_zoo() {
  std::vector<ZooEntry> zoo;
  zoo.push_back(cnot_qubit_model());

  ZooEntry swap = swap_replace_model(DensityOperator::pure({1.0, 1.0}), Observable(pauli_z()));
  swap.name = "swap_plus";
  zoo.push_back(std::move(swap));

  ZooEntry qutrit = controlled_shift_model(Observable(ComplexMatrix::diagonal({0.0, 1.0, 2.0})));
  qutrit.name = "shift_qutrit";
  zoo.push_back(std::move(qutrit));

  ZooEntry degenerate = controlled_shift_model(Observable(ComplexMatrix::diagonal({0.0, 0.0, 1.0})));
  degenerate.name = "shift_degenerate";
  zoo.push_back(std::move(degenerate));

  zoo.push_back(random_indirect_model(42, 2, 3));
  zoo.push_back(random_indirect_model(7, 3, 4));
  return zoo;
}

}  // namespace reductionlab
