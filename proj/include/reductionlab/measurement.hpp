#pragma once

// Indirect measurement models (sigma, U, B) and the state changes they
// induce on the measured object.
//
// The object always occupies the left tensor factor: operators on the
// composite act on H_S ⊗ H_A. Outcomes of the probe B are identified with
// outcomes of the claimed observable A by sorted-spectrum position, and are
// reported under A's eigenvalue.

#include <cstdint>
#include <optional>
#include <vector>

#include "reductionlab/linalg.hpp"
#include "reductionlab/quantum.hpp"

namespace reductionlab {

class MeasurementModel {
 public:
  // Throws ValidationError (with the offending field name) if u is not
  // unitary, the operators do not act on the right spaces, or the probe
  // and measured observables have different spectra. A zero
  // object_hamiltonian is used when none is given.
  MeasurementModel(DensityOperator sigma, ComplexMatrix u, Observable probe, Observable measured,
                   std::optional<ComplexMatrix> object_hamiltonian = std::nullopt);

  std::size_t object_dim() const noexcept { return measured_.dim(); }
  std::size_t apparatus_dim() const noexcept { return sigma_.dim(); }
  SubsystemDims composite_dims() const { return {object_dim(), apparatus_dim()}; }

  const DensityOperator& sigma() const noexcept { return sigma_; }
  const ComplexMatrix& u() const noexcept { return u_; }
  const Observable& probe() const noexcept { return probe_; }
  const Observable& measured() const noexcept { return measured_; }
  const ComplexMatrix& object_hamiltonian() const noexcept { return object_hamiltonian_; }

  std::vector<double> outcomes() const { return measured_.eigenvalues(); }
  // E^B for the probe cluster aligned with measured outcome `a`.
  const ComplexMatrix& probe_projection(double a) const;
  // 1 ⊗ E^B(a) on the composite.
  ComplexMatrix lifted_probe_projection(double a) const;

 private:
  DensityOperator sigma_;
  ComplexMatrix u_;
  Observable probe_;
  Observable measured_;
  ComplexMatrix object_hamiltonian_;
};

struct Effect {
  double outcome;
  ComplexMatrix effect;
};

// Tr_A[U^† (1 ⊗ E^B(a)) U (1 ⊗ sigma)] for every outcome. Always a POVM.
std::vector<Effect> effects(const MeasurementModel& model);

struct MeasuresReport {
  bool passes;
  double max_deviation;
};

// Whether every effect equals the claimed E^A(a).
MeasuresReport verify_measures(const MeasurementModel& model, double tol = kTolOp);

// Deviation of the effects from a POVM: max of ‖Σ effect − 1‖ and the most
// negative effect eigenvalue (clamped at 0).
double povm_deviation(const std::vector<Effect>& effs);

// U (rho ⊗ sigma) U^† on the composite.
ComplexMatrix interacted_state(const MeasurementModel& model, const DensityOperator& rho);

// P(a) = Tr[(1 ⊗ E^B(a)) U (rho ⊗ sigma) U^†].
OutcomeDistribution outcome_probability(const MeasurementModel& model, const DensityOperator& rho);

// rho' = Tr_A[U (rho ⊗ sigma) U^†].
DensityOperator nonselective_state(const MeasurementModel& model, const DensityOperator& rho);

// Unnormalized Tr_A[(1 ⊗ E^B(a)) U (rho ⊗ sigma) U^†]. Linear in rho.
ComplexMatrix reduction_numerator(const MeasurementModel& model, const DensityOperator& rho, double a);

// Posterior object state given probe outcome a. Throws ZeroProbabilityError
// when P(a) <= kTolProb.
DensityOperator state_reduction(const MeasurementModel& model, const DensityOperator& rho, double a);

// Same state from the two-sided projected composite
// Tr_A[(1⊗E) U(rho⊗sigma)U^† (1⊗E)] / Tr[(1⊗E) U(rho⊗sigma)U^† (1⊗E)].
DensityOperator state_reduction_sandwiched(const MeasurementModel& model, const DensityOperator& rho,
                                           double a);

struct MixtureReport {
  double max_deviation;
};

// ‖rho' − Σ_a P(a) rho_a‖ over outcomes with P(a) > kTolProb.
MixtureReport mixture_identity_check(const MeasurementModel& model, const DensityOperator& rho);

// Conventional composite state after a projective readout of B:
// (1⊗E) U(rho⊗sigma)U^† (1⊗E) / trace.
DensityOperator projection_postulate_composite(const MeasurementModel& model,
                                               const DensityOperator& rho, double a);

// E^A(a) rho E^A(a) / Tr[E^A(a) rho].
DensityOperator projection_postulate_prediction(const Observable& a_obs, const DensityOperator& rho,
                                                double a);

// Pure states |j><j|, (|j>+|k>)(<j|+<k|)/2 and (|j>+i|k>)(<j|-i<k|)/2 for
// j < k. Their span is every operator on a dim-dimensional space.
std::vector<DensityOperator> spanning_states(std::size_t dim);

// spanning_states(dim) followed by `random_count` seeded random states.
std::vector<DensityOperator> verification_states(std::size_t dim, std::uint64_t seed = 20240521,
                                                 std::size_t random_count = 50);

struct ProjectionPostulateWitness {
  double outcome;
  DensityOperator input;
  DensityOperator reduced;
  DensityOperator predicted;
  double deviation;
};

struct ProjectionPostulateReport {
  bool projective;
  double max_deviation;
  // Worst (rho, a) found, when any outcome had positive probability.
  std::optional<ProjectionPostulateWitness> witness;
};

// Compares state_reduction with the projection-postulate form over
// verification_states. Requires a verified model.
ProjectionPostulateReport projection_postulate_report(const MeasurementModel& model,
                                                      double tol = kTolOp);
bool satisfies_projection_postulate(const MeasurementModel& model, double tol = kTolOp);

// Conditional distribution of x measured tau after the interaction given
// probe outcome a, read off the composite joint
// Tr[(e^{iHτ} E^X(x) e^{-iHτ} ⊗ E^B(a)) U(rho⊗sigma)U^†] / P(a).
OutcomeDistribution composite_conditional(const MeasurementModel& model, const DensityOperator& rho,
                                          double a, const Observable& x, double tau);

}  // namespace reductionlab
