#pragma once

// Successive local measurements on a noninteracting pair S1 + S2: the joint
// outcome distribution, an apparatus-level oracle for it, and the prior and
// posterior states of S2 obtained by Bayes conditioning on the S1 outcome.

#include <vector>

#include "reductionlab/linalg.hpp"
#include "reductionlab/measurement.hpp"
#include "reductionlab/quantum.hpp"

namespace reductionlab {

// A is measured on S1 at time t; X is measured on S2 at time t + tau.
struct EntangledScenario {
  DensityOperator rho12;
  Observable a_obs;
  Observable x_obs;
  ComplexMatrix h1;
  ComplexMatrix h2;
  double t;
  double tau;

  std::size_t dim1() const noexcept { return a_obs.dim(); }
  std::size_t dim2() const noexcept { return x_obs.dim(); }
  SubsystemDims dims() const { return {dim1(), dim2()}; }
};

// Checks operator dimensions against rho12, Hermiticity of h1/h2 and
// t, tau >= 0. Throws ValidationError.
void validate(const EntangledScenario& s);

// Apparatus measuring the scenario's A locally on S1. Its interaction is
// extended to H1 ⊗ H_A ⊗ H2 as U ⊗ 1; the apparatus free Hamiltonian is 0.
struct LocalApparatusSpec {
  MeasurementModel model;
};

// Throws ValidationError unless the model acts on S1, claims a_obs and
// passes verify_measures.
void validate(const LocalApparatusSpec& app, const EntangledScenario& s);

// U ⊗ 1_2 on H1 ⊗ H_A ⊗ H2.
ComplexMatrix embedded_interaction(const MeasurementModel& model, std::size_t dim2);

class JointDistribution {
 public:
  struct Entry {
    double a;
    double x;
    double probability;
  };

  // Row-major over a_values x x_values.
  JointDistribution(std::vector<double> a_values, std::vector<double> x_values,
                    std::vector<double> probabilities);

  const std::vector<double>& a_values() const noexcept { return a_values_; }
  const std::vector<double>& x_values() const noexcept { return x_values_; }
  std::vector<Entry> entries() const;
  double probability(double a, double x) const;
  OutcomeDistribution marginal_a() const;
  OutcomeDistribution marginal_x() const;

 private:
  std::size_t a_index(double a) const;
  std::size_t x_index(double x) const;

  std::vector<double> a_values_;
  std::vector<double> x_values_;
  std::vector<double> p_;
};

// Σ |p − q| / 2 over a shared outcome grid.
double total_variation(const JointDistribution& p, const JointDistribution& q);

// Tr[(e^{iH1 t} E^A(a) e^{-iH1 t} ⊗ e^{iH2(t+τ)} E^X(x) e^{-iH2(t+τ)}) rho12].
JointDistribution joint_distribution_formula(const EntangledScenario& s);

// Evolves rho12 ⊗ sigma (reordered to S1, A, S2) freely to t, applies the
// interaction, evolves freely by tau and reads the commuting pair
// 1 ⊗ E^B(a) ⊗ E^X(x) on the final state.
JointDistribution joint_distribution_oracle(const EntangledScenario& s, const LocalApparatusSpec& app);

// e^{-iH2 t} Tr_1[rho12] e^{iH2 t}.
DensityOperator prior_state(const EntangledScenario& s);

// e^{-iH2 t} Tr_1[(e^{iH1 t} E^A(a) e^{-iH1 t} ⊗ 1) rho12] e^{iH2 t} / normalizer.
DensityOperator posterior_state(const EntangledScenario& s, double a);

// Conditional distribution of x given a. Throws ZeroProbabilityError if
// the marginal of a is at most kTolProb.
OutcomeDistribution bayes_condition(const JointDistribution& j, double a);

struct BayesMixtureReport {
  double max_deviation;
};

// ‖prior − Σ_a P(a) posterior(a)‖ over outcomes with P(a) > kTolProb.
BayesMixtureReport bayes_mixture_check(const EntangledScenario& s);

}  // namespace reductionlab
