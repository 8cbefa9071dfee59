#pragma once

// Analytically tractable measurement models used as fixtures.

#include <cstdint>
#include <string>
#include <vector>

#include "reductionlab/measurement.hpp"

namespace reductionlab {

struct ZooEntry {
  std::string name;
  MeasurementModel model;
  bool expected_projective;
  std::string notes;
};

// Qubit object and pointer, sigma = |0><0|, U = CNOT with the object as
// control, A = B = Pauli-Z.
ZooEntry cnot_qubit_model();

// U = SWAP, sigma = sigma_out, B = A. Every outcome leaves the object in
// sigma_out.
ZooEntry swap_replace_model(const DensityOperator& sigma_out, const Observable& a_obs);

// Pointer with one level per distinct eigenvalue of A, initially |0>, and
// U = Σ_k E^A(a_k) ⊗ Shift^k with Shift the cyclic shift. B reads the
// pointer position labelled by A's sorted spectrum.
ZooEntry controlled_shift_model(const Observable& a_obs);

// Seeded model on object_dim x apparatus_dim with a random A (integer
// spectrum, random eigenbasis, random degeneracy), built from a controlled
// shift on apparatus_dim pointer levels, conjugated by 1 ⊗ W for a random
// apparatus unitary W (sigma and B conjugated alike), then followed by an
// outcome-controlled feedback Σ_b R_b ⊗ E^B(b) with random object unitaries
// R_b. Every step preserves the effects, so the model measures A; the
// feedback makes it non-projective whenever object_dim > 1.
ZooEntry random_indirect_model(std::uint64_t seed, std::size_t object_dim, std::size_t apparatus_dim);

// The fixed fixture set: cnot, swap_plus (sigma_out = |+><+|, A = Pauli-Z),
// shift_qutrit (A = diag(0,1,2)), shift_degenerate (A = diag(0,0,1)),
// random_s42_2x3 and random_s7_3x4.
std::vector<ZooEntry> standard_zoo();

// Pauli matrices and qubit states used by fixtures and tests.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix swap_gate(std::size_t dim);

}  // namespace reductionlab
