#pragma once

// Verification suites over measurement models and entangled scenarios, and
// the seeded random property sweep.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reductionlab/entangled.hpp"
#include "reductionlab/measurement.hpp"
#include "reductionlab/random.hpp"

namespace reductionlab {

struct Tolerances {
  double op = kTolOp;
  double prob = kTolProb;
};

struct Report {
  std::string check;
  bool pass;
  double max_deviation;
  double tolerance;
  double elapsed_ms;
};

// pass <=> deviation <= tolerance; deviation is clamped at 0.
Report make_report(std::string check, double deviation, double tolerance, double elapsed_ms = 0.0);

bool all_pass(const std::vector<Report>& reports);

struct VerifySummary {
  std::vector<Report> checks;
  // Informational; never part of pass/fail. Absent when the model does not
  // measure its claimed observable.
  std::optional<ProjectionPostulateReport> projection_postulate;
};

// measures, povm, statistics, reduction_equivalence, mixture_identity and
// posterior_consistency over verification_states(object_dim).
VerifySummary verify_model(const MeasurementModel& model, const Tolerances& tol = {});

// Individual invariant measurements shared by the suites. Each returns the
// largest deviation seen over `states`.
double statistics_deviation(const MeasurementModel& model, const std::vector<DensityOperator>& states);
double reduction_equivalence_deviation(const MeasurementModel& model,
                                       const std::vector<DensityOperator>& states);
double mixture_identity_deviation(const MeasurementModel& model, const std::vector<DensityOperator>& states);
// Conditional statistics of later object measurements read off the
// composite versus Born statistics of the reduced state evolved under the
// object Hamiltonian; probes the measured observable and one seeded random
// observable at tau in {0, 0.7}.
double posterior_consistency_deviation(const MeasurementModel& model,
                                       const std::vector<DensityOperator>& states, std::uint64_t seed);
// P(a|mix) rho_a(mix) versus the λ-weighted unnormalized reductions of the
// two components, over consecutive pairs of `states` with λ = 0.3.
double affinity_deviation(const MeasurementModel& model, const std::vector<DensityOperator>& states);

struct PosteriorResult {
  double outcome;
  double probability;
  DensityOperator state;
  OutcomeDistribution conditional;      // Bayes conditional of the joint
  OutcomeDistribution posterior_born;   // rule1 statistics of the posterior
};

struct EntangledSummary {
  JointDistribution formula_joint;
  std::optional<JointDistribution> oracle_joint;
  DensityOperator prior;
  std::vector<PosteriorResult> posteriors;
  // Every positive-probability conditional equals the X marginal.
  bool independent;
  std::vector<Report> checks;
};

// formula_vs_oracle (total variation, only with an apparatus),
// bayes_mixture, posterior_conditionals and prior_marginal.
EntangledSummary analyze_entangled(const EntangledScenario& s,
                                   const std::optional<LocalApparatusSpec>& app, const Tolerances& tol = {});

// A random scenario on dim1 x dim2: random mixed rho12, random Hamiltonians,
// A = apparatus's measured observable, random X, t and tau in [0, 2).
EntangledScenario random_scenario(Rng& rng, const Observable& a_obs, std::size_t dim2);

struct SweepOptions {
  std::uint64_t seed = 42;
  std::size_t trials = 30;
  std::size_t dim_min = 2;
  std::size_t dim_max = 4;
  Tolerances tol{};
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

// Trial i uses Rng(seed + i); results do not depend on the thread count.
std::vector<Report> run_sweep(const SweepOptions& opts);

}  // namespace reductionlab
