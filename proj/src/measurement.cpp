#include "reductionlab/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reductionlab/errors.hpp"
#include "reductionlab/random.hpp"

namespace reductionlab {

namespace {

void require_object_state(const MeasurementModel& model, const DensityOperator& rho) {
  if (rho.dim() != model.object_dim())
    throw DimensionError("state dim " + std::to_string(rho.dim()) + " does not match object dim " +
                         std::to_string(model.object_dim()));
}

std::size_t outcome_index(const MeasurementModel& model, double a) {
  const auto k = model.measured().index_of(a);
  if (!k) throw DomainError("outcome " + std::to_string(a) + " is not an eigenvalue of the measured observable");
  return *k;
}

ComplexMatrix traced_to_object(const MeasurementModel& model, const ComplexMatrix& m) {
  return partial_trace(m, model.composite_dims(), {0});
}

double require_positive(double p, double a) {
  if (p <= kTolProb)
    throw ZeroProbabilityError("outcome " + std::to_string(a) + " has probability " + std::to_string(p));
  return p;
}

DensityOperator normalized(ComplexMatrix m, double trace) {
  m *= Complex(1.0 / trace);
  return DensityOperator((m + m.adjoint()) * Complex(0.5));
}

}  // namespace

MeasurementModel::MeasurementModel(DensityOperator sigma, ComplexMatrix u, Observable probe,
                                   Observable measured, std::optional<ComplexMatrix> object_hamiltonian)
    : sigma_(std::move(sigma)),
      u_(std::move(u)),
      probe_(std::move(probe)),
      measured_(std::move(measured)),
      object_hamiltonian_(object_hamiltonian ? std::move(*object_hamiltonian)
                                             : ComplexMatrix::zero(measured_.dim())) {
  const std::size_t d = measured_.dim();
  const std::size_t m = sigma_.dim();
  if (probe_.dim() != m)
    throw ValidationError("probe observable dim " + std::to_string(probe_.dim()) +
                              " does not match apparatus dim " + std::to_string(m),
                          "b_matrix");
  if (u_.dim() != d * m)
    throw ValidationError("interaction unitary dim " + std::to_string(u_.dim()) + " is not " +
                              std::to_string(d) + "x" + std::to_string(m),
                          "u");
  if (!is_unitary(u_)) throw ValidationError("interaction u is not unitary", "u");
  if (!same_spectrum(probe_, measured_))
    throw ValidationError("probe and measured observables have different spectra", "b_matrix");
  if (object_hamiltonian_.dim() != d)
    throw ValidationError("object hamiltonian has the wrong dimension", "object_hamiltonian");
  if (!is_hermitian(object_hamiltonian_))
    throw ValidationError("object hamiltonian is not Hermitian", "object_hamiltonian");
}

const ComplexMatrix& MeasurementModel::probe_projection(double a) const {
  return probe_.spectrum()[outcome_index(*this, a)].projection;
}

ComplexMatrix MeasurementModel::lifted_probe_projection(double a) const {
  return tensor(ComplexMatrix::identity(object_dim()), probe_projection(a));
}

std::vector<Effect> effects(const MeasurementModel& model) {
  const ComplexMatrix lifted_sigma = tensor(ComplexMatrix::identity(model.object_dim()), model.sigma().matrix());
  std::vector<Effect> out;
  for (double a : model.outcomes()) {
    const ComplexMatrix heis = model.u().adjoint() * model.lifted_probe_projection(a) * model.u();
    out.push_back({a, traced_to_object(model, heis * lifted_sigma)});
  }
  return out;
}

MeasuresReport verify_measures(const MeasurementModel& model, double tol) {
  if (!same_spectrum(model.probe(), model.measured()))
    throw ValidationError("probe and measured observables have different spectra", "b_matrix");
  double worst = 0.0;
  for (const auto& [a, e] : effects(model))
    worst = worst_of(worst, max_deviation(e, model.measured().projection(a)));
  return {worst <= tol, worst};
}

double povm_deviation(const std::vector<Effect>& effs) {
  if (effs.empty()) return 0.0;
  ComplexMatrix sum = ComplexMatrix::zero(effs.front().effect.dim());
  double worst = 0.0;
  for (const auto& e : effs) {
    sum += e.effect;
    worst = worst_of(worst, max_deviation(e.effect, e.effect.adjoint()));
    worst = worst_of(worst, -min_eigenvalue(e.effect));
  }
  return worst_of(worst, max_deviation(sum, ComplexMatrix::identity(sum.dim())));
}

ComplexMatrix interacted_state(const MeasurementModel& model, const DensityOperator& rho) {
  require_object_state(model, rho);
  return model.u() * tensor(rho.matrix(), model.sigma().matrix()) * model.u().adjoint();
}

OutcomeDistribution outcome_probability(const MeasurementModel& model, const DensityOperator& rho) {
  const ComplexMatrix state = interacted_state(model, rho);
  std::vector<OutcomeDistribution::Entry> entries;
  for (double a : model.outcomes())
    entries.emplace_back(a, (model.lifted_probe_projection(a) * state).trace().real());
  return OutcomeDistribution(std::move(entries));
}

DensityOperator nonselective_state(const MeasurementModel& model, const DensityOperator& rho) {
  const ComplexMatrix out = traced_to_object(model, interacted_state(model, rho));
  return DensityOperator((out + out.adjoint()) * Complex(0.5));
}

ComplexMatrix reduction_numerator(const MeasurementModel& model, const DensityOperator& rho, double a) {
  return traced_to_object(model, model.lifted_probe_projection(a) * interacted_state(model, rho));
}

DensityOperator state_reduction(const MeasurementModel& model, const DensityOperator& rho, double a) {
  const ComplexMatrix numerator = reduction_numerator(model, rho, a);
  const double p = require_positive(numerator.trace().real(), a);
  return normalized(numerator, p);
}

DensityOperator state_reduction_sandwiched(const MeasurementModel& model, const DensityOperator& rho,
                                           double a) {
  const ComplexMatrix proj = model.lifted_probe_projection(a);
  const ComplexMatrix sandwiched = proj * interacted_state(model, rho) * proj;
  const double p = require_positive(sandwiched.trace().real(), a);
  return normalized(traced_to_object(model, sandwiched), p);
}

MixtureReport mixture_identity_check(const MeasurementModel& model, const DensityOperator& rho) {
  const DensityOperator after = nonselective_state(model, rho);
  ComplexMatrix mixture = ComplexMatrix::zero(model.object_dim());
  for (const auto& [a, p] : outcome_probability(model, rho).entries()) {
    if (p <= kTolProb) continue;
    mixture += state_reduction(model, rho, a).matrix() * Complex(p);
  }
  return {max_deviation(after.matrix(), mixture)};
}

DensityOperator projection_postulate_composite(const MeasurementModel& model,
                                               const DensityOperator& rho, double a) {
  const ComplexMatrix proj = model.lifted_probe_projection(a);
  const ComplexMatrix sandwiched = proj * interacted_state(model, rho) * proj;
  const double p = require_positive(sandwiched.trace().real(), a);
  ComplexMatrix m = sandwiched * Complex(1.0 / p);
  return DensityOperator((m + m.adjoint()) * Complex(0.5), model.composite_dims());
}

DensityOperator projection_postulate_prediction(const Observable& a_obs, const DensityOperator& rho,
                                                double a) {
  if (a_obs.dim() != rho.dim()) throw DimensionError("projection_postulate_prediction: dims differ");
  const ComplexMatrix& e = a_obs.projection(a);
  const ComplexMatrix numerator = e * rho.matrix() * e;
  return normalized(numerator, require_positive(numerator.trace().real(), a));
}

std::vector<DensityOperator> spanning_states(std::size_t dim) {
  std::vector<DensityOperator> out;
  const Complex i_unit(0.0, 1.0);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<Complex> ket(dim, 0.0);
    ket[j] = 1.0;
    out.push_back(DensityOperator::pure(ket));
  }
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k) {
      std::vector<Complex> ket(dim, 0.0);
      ket[j] = 1.0;
      ket[k] = 1.0;
      out.push_back(DensityOperator::pure(ket));
      ket[k] = i_unit;
      out.push_back(DensityOperator::pure(ket));
    }
  return out;
}

std::vector<DensityOperator> verification_states(std::size_t dim, std::uint64_t seed,
                                                 std::size_t random_count) {
  auto out = spanning_states(dim);
  Rng rng(seed);
  for (std::size_t n = 0; n < random_count; ++n) out.push_back(random_density(rng, dim));
  return out;
}

ProjectionPostulateReport projection_postulate_report(const MeasurementModel& model, double tol) {
  const auto check = verify_measures(model);
  if (!check.passes)
    throw ValidationError("model does not measure its claimed observable (deviation " +
                          std::to_string(check.max_deviation) + ")");
  ProjectionPostulateReport report{true, 0.0, std::nullopt};
  for (const auto& rho : verification_states(model.object_dim())) {
    for (const auto& [a, p] : outcome_probability(model, rho).entries()) {
      if (p <= kTolProb) continue;
      DensityOperator reduced = state_reduction(model, rho, a);
      DensityOperator predicted = projection_postulate_prediction(model.measured(), rho, a);
      const double dev = max_deviation(reduced.matrix(), predicted.matrix());
      if (!report.witness || dev > report.max_deviation) {
        report.max_deviation = dev;
        report.witness = ProjectionPostulateWitness{a, rho, std::move(reduced), std::move(predicted), dev};
      }
    }
  }
  report.projective = report.max_deviation <= tol;
  return report;
}

bool satisfies_projection_postulate(const MeasurementModel& model, double tol) {
  return projection_postulate_report(model, tol).projective;
}

OutcomeDistribution composite_conditional(const MeasurementModel& model, const DensityOperator& rho,
                                          double a, const Observable& x, double tau) {
  if (x.dim() != model.object_dim()) throw DimensionError("composite_conditional: observable dim");
  const ComplexMatrix state = interacted_state(model, rho);
  const ComplexMatrix probe = model.lifted_probe_projection(a);
  const double p = require_positive((probe * state).trace().real(), a);
  const ComplexMatrix v = herm_expm(model.object_hamiltonian(), tau);
  const ComplexMatrix id_a = ComplexMatrix::identity(model.apparatus_dim());
  std::vector<OutcomeDistribution::Entry> entries;
  for (const auto& s : x.spectrum()) {
    const ComplexMatrix heis = v.adjoint() * s.projection * v;
    const ComplexMatrix joint_op = tensor(heis, id_a) * probe;
    entries.emplace_back(s.eigenvalue, (joint_op * state).trace().real() / p);
  }
  return OutcomeDistribution(std::move(entries));
}

}  // namespace reductionlab
