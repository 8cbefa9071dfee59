#include "reductionlab/entangled.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reductionlab/errors.hpp"

namespace reductionlab {

namespace {

// Heisenberg picture of e at time t under h: e^{iht} e e^{-iht}.
ComplexMatrix heisenberg(const ComplexMatrix& e, const ComplexMatrix& h, double t) {
  const ComplexMatrix v = herm_expm(h, t);
  return v.adjoint() * e * v;
}

std::size_t find_value(const std::vector<double>& values, double v, const char* what) {
  for (std::size_t k = 0; k < values.size(); ++k)
    if (std::abs(values[k] - v) <= kTolEig) return k;
  throw DomainError(std::string(what) + " outcome " + std::to_string(v) + " not in distribution");
}

}  // namespace

void validate(const EntangledScenario& s) {
  if (s.rho12.dim() != s.dim1() * s.dim2())
    throw ValidationError("rho12 dim does not match a_obs x x_obs dims", "rho12");
  if (s.rho12.dims() && *s.rho12.dims() != s.dims())
    throw ValidationError("rho12 factor annotation disagrees with observables", "rho12");
  if (s.h1.dim() != s.dim1() || !is_hermitian(s.h1))
    throw ValidationError("h1 must be Hermitian on the first factor", "h1");
  if (s.h2.dim() != s.dim2() || !is_hermitian(s.h2))
    throw ValidationError("h2 must be Hermitian on the second factor", "h2");
  if (!(s.t >= 0.0)) throw ValidationError("t must be nonnegative", "t");
  if (!(s.tau >= 0.0)) throw ValidationError("tau must be nonnegative", "tau");
}

void validate(const LocalApparatusSpec& app, const EntangledScenario& s) {
  if (app.model.object_dim() != s.dim1())
    throw ValidationError("apparatus object dim does not match the first factor", "apparatus");
  if (max_deviation(app.model.measured().matrix(), s.a_obs.matrix()) > kTolOp)
    throw ValidationError("apparatus claims a different observable than a_obs", "apparatus");
  const auto check = verify_measures(app.model);
  if (!check.passes)
    throw ValidationError("apparatus does not measure a_obs (deviation " +
                              std::to_string(check.max_deviation) + ")",
                          "apparatus");
}

ComplexMatrix embedded_interaction(const MeasurementModel& model, std::size_t dim2) {
  return tensor(model.u(), ComplexMatrix::identity(dim2));
}

JointDistribution::JointDistribution(std::vector<double> a_values, std::vector<double> x_values,
                                     std::vector<double> probabilities)
    : a_values_(std::move(a_values)), x_values_(std::move(x_values)), p_(std::move(probabilities)) {
  if (p_.size() != a_values_.size() * x_values_.size())
    throw DimensionError("JointDistribution: probability grid has the wrong size");
  double total = 0.0;
  for (double p : p_) {
    if (p < -kTolProb || p > 1.0 + kTolProb)
      throw ValidationError("joint probability " + std::to_string(p) + " outside [0,1]");
    total += p;
  }
  if (std::abs(total - 1.0) > kTolProb)
    throw ValidationError("joint probabilities sum to " + std::to_string(total));
}

std::vector<JointDistribution::Entry> JointDistribution::entries() const {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < a_values_.size(); ++i)
    for (std::size_t j = 0; j < x_values_.size(); ++j)
      out.push_back({a_values_[i], x_values_[j], p_[i * x_values_.size() + j]});
  return out;
}

std::size_t JointDistribution::a_index(double a) const { return find_value(a_values_, a, "a"); }
std::size_t JointDistribution::x_index(double x) const { return find_value(x_values_, x, "x"); }

double JointDistribution::probability(double a, double x) const {
  return p_[a_index(a) * x_values_.size() + x_index(x)];
}

OutcomeDistribution JointDistribution::marginal_a() const {
  std::vector<OutcomeDistribution::Entry> out;
  for (std::size_t i = 0; i < a_values_.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < x_values_.size(); ++j) sum += p_[i * x_values_.size() + j];
    out.emplace_back(a_values_[i], sum);
  }
  return OutcomeDistribution(std::move(out));
}

OutcomeDistribution JointDistribution::marginal_x() const {
  std::vector<OutcomeDistribution::Entry> out;
  for (std::size_t j = 0; j < x_values_.size(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a_values_.size(); ++i) sum += p_[i * x_values_.size() + j];
    out.emplace_back(x_values_[j], sum);
  }
  return OutcomeDistribution(std::move(out));
}

double total_variation(const JointDistribution& p, const JointDistribution& q) {
  if (p.a_values().size() != q.a_values().size() || p.x_values().size() != q.x_values().size())
    throw DimensionError("total_variation: outcome grids differ");
  double sum = 0.0;
  for (const auto& e : p.entries()) sum += std::abs(e.probability - q.probability(e.a, e.x));
  return 0.5 * sum;
}

JointDistribution joint_distribution_formula(const EntangledScenario& s) {
  validate(s);
  std::vector<double> probs;
  for (const auto& ea : s.a_obs.spectrum()) {
    const ComplexMatrix a_t = heisenberg(ea.projection, s.h1, s.t);
    for (const auto& ex : s.x_obs.spectrum()) {
      const ComplexMatrix x_t = heisenberg(ex.projection, s.h2, s.t + s.tau);
      probs.push_back((tensor(a_t, x_t) * s.rho12.matrix()).trace().real());
    }
  }
  return JointDistribution(s.a_obs.eigenvalues(), s.x_obs.eigenvalues(), std::move(probs));
}

JointDistribution joint_distribution_oracle(const EntangledScenario& s, const LocalApparatusSpec& app) {
  validate(s);
  validate(app, s);
  const MeasurementModel& model = app.model;
  const std::size_t d1 = s.dim1();
  const std::size_t d2 = s.dim2();
  const std::size_t m = model.apparatus_dim();

  // rho12 ⊗ sigma lives on S1, S2, A; move the apparatus next to S1.
  const SubsystemDims initial_dims{d1, d2, m};
  ComplexMatrix state = permute_subsystems(tensor(s.rho12.matrix(), model.sigma().matrix()),
                                           initial_dims, {0, 2, 1});

  const ComplexMatrix id1 = ComplexMatrix::identity(d1);
  const ComplexMatrix id2 = ComplexMatrix::identity(d2);
  const ComplexMatrix id_a = ComplexMatrix::identity(m);
  const ComplexMatrix h_free = tensor({s.h1, id_a, id2}) + tensor({id1, id_a, s.h2});

  const ComplexMatrix before = herm_expm(h_free, s.t);
  const ComplexMatrix after = herm_expm(h_free, s.tau);
  const ComplexMatrix total = after * embedded_interaction(model, d2) * before;
  state = total * state * total.adjoint();

  std::vector<double> probs;
  for (double a : s.a_obs.eigenvalues()) {
    const ComplexMatrix& eb = model.probe_projection(a);
    for (const auto& ex : s.x_obs.spectrum())
      probs.push_back((tensor({id1, eb, ex.projection}) * state).trace().real());
  }
  return JointDistribution(s.a_obs.eigenvalues(), s.x_obs.eigenvalues(), std::move(probs));
}

DensityOperator prior_state(const EntangledScenario& s) {
  validate(s);
  const ComplexMatrix reduced = partial_trace(s.rho12.matrix(), s.dims(), {1});
  return evolve(DensityOperator((reduced + reduced.adjoint()) * Complex(0.5)), s.h2, s.t);
}

DensityOperator posterior_state(const EntangledScenario& s, double a) {
  validate(s);
  const ComplexMatrix a_t = heisenberg(s.a_obs.projection(a), s.h1, s.t);
  const ComplexMatrix conditioned = tensor(a_t, ComplexMatrix::identity(s.dim2())) * s.rho12.matrix();
  const double p = conditioned.trace().real();
  if (p <= kTolProb)
    throw ZeroProbabilityError("conditioning outcome " + std::to_string(a) + " has probability " +
                               std::to_string(p));
  ComplexMatrix reduced = partial_trace(conditioned, s.dims(), {1}) * Complex(1.0 / p);
  reduced = (reduced + reduced.adjoint()) * Complex(0.5);
  return evolve(DensityOperator(std::move(reduced)), s.h2, s.t);
}

OutcomeDistribution bayes_condition(const JointDistribution& j, double a) {
  double marginal = 0.0;
  for (double x : j.x_values()) marginal += j.probability(a, x);
  if (marginal <= kTolProb)
    throw ZeroProbabilityError("conditioning outcome " + std::to_string(a) + " has probability " +
                               std::to_string(marginal));
  std::vector<OutcomeDistribution::Entry> out;
  for (double x : j.x_values()) out.emplace_back(x, j.probability(a, x) / marginal);
  return OutcomeDistribution(std::move(out));
}

BayesMixtureReport bayes_mixture_check(const EntangledScenario& s) {
  const DensityOperator prior = prior_state(s);
  ComplexMatrix mixture = ComplexMatrix::zero(s.dim2());
  const DensityOperator reduced1 = reduced_state(s.rho12, s.dims(), {0});
  const DensityOperator at_t = evolve(reduced1, s.h1, s.t);
  for (const auto& [a, p] : born_distribution(s.a_obs, at_t).entries()) {
    if (p <= kTolProb) continue;
    mixture += posterior_state(s, a).matrix() * Complex(p);
  }
  return {max_deviation(prior.matrix(), mixture)};
}

}  // namespace reductionlab
