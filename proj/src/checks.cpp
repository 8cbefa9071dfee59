#include "reductionlab/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

#include "reductionlab/errors.hpp"
#include "reductionlab/zoo.hpp"

namespace reductionlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs `f` and returns {deviation, elapsed ms}.
std::pair<double, double> timed(const std::function<double()>& f) {
  const auto start = Clock::now();
  const double dev = f();
  return {dev, elapsed_ms_since(start)};
}

constexpr double kLambda = 0.3;
constexpr double kProbeTau = 0.7;

}  // namespace

Report make_report(std::string check, double deviation, double tolerance, double elapsed_ms) {
  if (deviation < 0.0) deviation = 0.0;
  return {std::move(check), deviation <= tolerance, deviation, tolerance, elapsed_ms};
}

bool all_pass(const std::vector<Report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.pass; });
}

double statistics_deviation(const MeasurementModel& model, const std::vector<DensityOperator>& states) {
  double worst = 0.0;
  for (const auto& rho : states)
    worst = worst_of(worst, max_deviation(outcome_probability(model, rho),
                                          born_distribution(model.measured(), rho)));
  return worst;
}

double reduction_equivalence_deviation(const MeasurementModel& model,
                                       const std::vector<DensityOperator>& states) {
  double worst = 0.0;
  for (const auto& rho : states) {
    const ComplexMatrix composite = interacted_state(model, rho);
    for (const auto& [a, p] : outcome_probability(model, rho).entries()) {
      if (p <= kTolProb) continue;
      worst = worst_of(worst, max_deviation(state_reduction(model, rho, a).matrix(),
                                            state_reduction_sandwiched(model, rho, a).matrix()));
      // Single- and double-projection normalizers are the same number.
      const ComplexMatrix proj = model.lifted_probe_projection(a);
      const double single = (proj * composite).trace().real();
      const double twice = (proj * composite * proj).trace().real();
      worst = worst_of(worst, std::abs(single - twice));
    }
  }
  return worst;
}

double mixture_identity_deviation(const MeasurementModel& model, const std::vector<DensityOperator>& states) {
  double worst = 0.0;
  for (const auto& rho : states) worst = worst_of(worst, mixture_identity_check(model, rho).max_deviation);
  return worst;
}

double posterior_consistency_deviation(const MeasurementModel& model,
                                       const std::vector<DensityOperator>& states, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<Observable> probes{model.measured(), Observable(random_hermitian(rng, model.object_dim()))};
  double worst = 0.0;
  for (const auto& rho : states) {
    for (const auto& [a, p] : outcome_probability(model, rho).entries()) {
      if (p <= kTolProb) continue;
      const DensityOperator reduced = state_reduction(model, rho, a);
      for (const auto& x : probes)
        for (double tau : {0.0, kProbeTau})
          worst = worst_of(worst, max_deviation(composite_conditional(model, rho, a, x, tau),
                                                rule1_distribution(reduced, model.object_hamiltonian(), x, tau)));
    }
  }
  return worst;
}

double affinity_deviation(const MeasurementModel& model, const std::vector<DensityOperator>& states) {
  auto weighted = [&](const DensityOperator& rho, double a) {
    const double p = outcome_probability(model, rho).probability(a);
    if (p <= kTolProb) return ComplexMatrix::zero(model.object_dim());
    return state_reduction(model, rho, a).matrix() * Complex(p);
  };
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    const DensityOperator& r1 = states[i];
    const DensityOperator& r2 = states[i + 1];
    const DensityOperator mix(r1.matrix() * Complex(kLambda) + r2.matrix() * Complex(1.0 - kLambda));
    for (double a : model.outcomes()) {
      const ComplexMatrix rhs = weighted(r1, a) * Complex(kLambda) + weighted(r2, a) * Complex(1.0 - kLambda);
      worst = worst_of(worst, max_deviation(weighted(mix, a), rhs));
    }
  }
  return worst;
}

VerifySummary verify_model(const MeasurementModel& model, const Tolerances& tol) {
  VerifySummary summary;
  const auto states = verification_states(model.object_dim());

  const auto start = Clock::now();
  const auto measures = verify_measures(model, tol.op);
  summary.checks.push_back(make_report("measures", measures.max_deviation, tol.op, elapsed_ms_since(start)));

  auto add = [&](const char* name, double tolerance, const std::function<double()>& f) {
    const auto [dev, ms] = timed(f);
    summary.checks.push_back(make_report(name, dev, tolerance, ms));
  };
  add("povm", tol.op, [&] { return povm_deviation(effects(model)); });
  add("statistics", tol.prob, [&] { return statistics_deviation(model, states); });
  add("reduction_equivalence", tol.op, [&] { return reduction_equivalence_deviation(model, states); });
  add("mixture_identity", tol.op, [&] { return mixture_identity_deviation(model, states); });
  add("posterior_consistency", tol.op, [&] { return posterior_consistency_deviation(model, states, 1729); });

  if (measures.passes) summary.projection_postulate = projection_postulate_report(model, tol.op);
  return summary;
}

EntangledScenario random_scenario(Rng& rng, const Observable& a_obs, std::size_t dim2) {
  const std::size_t dim1 = a_obs.dim();
  const DensityOperator joint = random_density(rng, dim1 * dim2);
  EntangledScenario s{DensityOperator(joint.matrix(), SubsystemDims{dim1, dim2}),
                      a_obs,
                      Observable(random_hermitian(rng, dim2)),
                      random_hermitian(rng, dim1),
                      random_hermitian(rng, dim2),
                      0.0,
                      0.0};
  s.t = 2.0 * rng.uniform();
  s.tau = 2.0 * rng.uniform();
  return s;
}

namespace {

double posterior_conditional_deviation(const EntangledScenario& s, const JointDistribution& joint) {
  double worst = 0.0;
  for (const auto& [a, p] : joint.marginal_a().entries()) {
    if (p <= kTolProb) continue;
    worst = worst_of(worst, max_deviation(bayes_condition(joint, a),
                                          rule1_distribution(posterior_state(s, a), s.h2, s.x_obs, s.tau)));
  }
  return worst;
}

double prior_marginal_deviation(const EntangledScenario& s, const JointDistribution& joint) {
  return max_deviation(joint.marginal_x(), rule1_distribution(prior_state(s), s.h2, s.x_obs, s.tau));
}

}  // namespace

EntangledSummary analyze_entangled(const EntangledScenario& s, const std::optional<LocalApparatusSpec>& app,
                                   const Tolerances& tol) {
  validate(s);
  auto start = Clock::now();
  JointDistribution formula = joint_distribution_formula(s);
  const double formula_ms = elapsed_ms_since(start);

  EntangledSummary out{formula, std::nullopt, prior_state(s), {}, true, {}};
  if (app) {
    start = Clock::now();
    out.oracle_joint = joint_distribution_oracle(s, *app);
    out.checks.push_back(make_report("formula_vs_oracle", total_variation(formula, *out.oracle_joint), tol.op,
                                     formula_ms + elapsed_ms_since(start)));
  }

  const OutcomeDistribution marginal_x = formula.marginal_x();
  for (const auto& [a, p] : formula.marginal_a().entries()) {
    if (p <= tol.prob) continue;
    DensityOperator post = posterior_state(s, a);
    OutcomeDistribution conditional = bayes_condition(formula, a);
    OutcomeDistribution born = rule1_distribution(post, s.h2, s.x_obs, s.tau);
    out.independent = out.independent && max_deviation(conditional, marginal_x) <= tol.op;
    out.posteriors.push_back({a, p, std::move(post), std::move(conditional), std::move(born)});
  }

  auto add = [&](const char* name, double tolerance, const std::function<double()>& f) {
    const auto [dev, ms] = timed(f);
    out.checks.push_back(make_report(name, dev, tolerance, ms));
  };
  add("bayes_mixture", tol.op, [&] { return bayes_mixture_check(s).max_deviation; });
  add("posterior_conditionals", tol.prob, [&] { return posterior_conditional_deviation(s, formula); });
  add("prior_marginal", tol.prob, [&] { return prior_marginal_deviation(s, formula); });
  return out;
}

std::vector<Report> run_sweep(const SweepOptions& opts) {
  if (opts.trials == 0) throw DomainError("sweep: trials must be at least 1");
  if (opts.dim_min == 0 || opts.dim_min > opts.dim_max)
    throw DomainError("sweep: dims must satisfy 1 <= min <= max");

  struct Invariant {
    const char* name;
    bool probability;
  };
  static constexpr Invariant kInvariants[] = {
      {"measures", false},          {"povm", false},
      {"statistics", true},         {"reduction_equivalence", false},
      {"mixture_identity", false},  {"affinity", false},
      {"posterior_consistency", false}, {"lmt_formula_vs_oracle", false},
      {"bayes_mixture", false},     {"posterior_conditionals", true},
      {"prior_marginal", true},
  };
  constexpr std::size_t kCount = std::size(kInvariants);

  struct TrialResult {
    double dev[kCount]{};
    double ms[kCount]{};
  };
  std::vector<TrialResult> results(opts.trials);

  auto run_trial = [&](std::size_t i) {
    TrialResult& r = results[i];
    Rng rng(opts.seed + i);
    const std::size_t d = rng.between(opts.dim_min, opts.dim_max);
    const std::size_t m = rng.between(opts.dim_min, opts.dim_max);
    const MeasurementModel model = random_indirect_model(rng.next_u64(), d, m).model;
    auto states = spanning_states(d);
    for (int k = 0; k < 10; ++k) states.push_back(random_density(rng, d));
    const std::uint64_t probe_seed = rng.next_u64();
    const EntangledScenario s = random_scenario(rng, model.measured(), rng.between(opts.dim_min, opts.dim_max));
    const LocalApparatusSpec app{model};

    std::size_t slot = 0;
    auto record = [&](const std::function<double()>& f) {
      std::tie(r.dev[slot], r.ms[slot]) = timed(f);
      ++slot;
    };
    record([&] { return verify_measures(model).max_deviation; });
    record([&] { return povm_deviation(effects(model)); });
    record([&] { return statistics_deviation(model, states); });
    record([&] { return reduction_equivalence_deviation(model, states); });
    record([&] { return mixture_identity_deviation(model, states); });
    record([&] { return affinity_deviation(model, states); });
    record([&] { return posterior_consistency_deviation(model, states, probe_seed); });
    const JointDistribution formula = joint_distribution_formula(s);
    record([&] { return total_variation(formula, joint_distribution_oracle(s, app)); });
    record([&] { return bayes_mixture_check(s).max_deviation; });
    record([&] { return posterior_conditional_deviation(s, formula); });
    record([&] { return prior_marginal_deviation(s, formula); });
  };

  std::size_t threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, opts.trials);
  if (threads <= 1) {
    for (std::size_t i = 0; i < opts.trials; ++i) run_trial(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < opts.trials; i = next++) {
          try {
            run_trial(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<Report> out;
  for (std::size_t k = 0; k < kCount; ++k) {
    double worst = 0.0;
    double ms = 0.0;
    for (const auto& r : results) {
      worst = worst_of(worst, r.dev[k]);
      ms += r.ms[k];
    }
    out.push_back(make_report(kInvariants[k].name, worst, kInvariants[k].probability ? opts.tol.prob : opts.tol.op, ms));
  }
  return out;
}

}  // namespace reductionlab
