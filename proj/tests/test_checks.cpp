#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "reductionlab/checks.hpp"
#include "reductionlab/errors.hpp"
#include "reductionlab/zoo.hpp"

using namespace reductionlab;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

EntangledScenario bell_scenario(const ComplexMatrix& x) {
  return EntangledScenario{DensityOperator(ComplexMatrix::outer({kS, 0.0, 0.0, kS}), SubsystemDims{2, 2}),
                           Observable(pauli_z()),
                           Observable(x),
                           ComplexMatrix::zero(2),
                           ComplexMatrix::zero(2),
                           0.0,
                           0.0};
}

}  // namespace

TEST_CASE("report pass iff deviation within tolerance") {
  CHECK(make_report("x", 1e-9, 1e-9).pass);
  CHECK_FALSE(make_report("x", 2e-9, 1e-9).pass);
  CHECK(make_report("x", -1e-17, 1e-9).max_deviation == 0.0);
  CHECK_FALSE(make_report("x", std::nan(""), 1e-9).pass);
  CHECK(all_pass({make_report("a", 0.0, 1.0), make_report("b", 0.5, 1.0)}));
  CHECK_FALSE(all_pass({make_report("a", 0.0, 1.0), make_report("b", 1.5, 1.0)}));
}

TEST_CASE("verify_model passes every fixture") {
  for (const auto& e : standard_zoo()) {
    CAPTURE(e.name);
    const auto s = verify_model(e.model);
    CHECK(all_pass(s.checks));
    std::set<std::string> names;
    for (const auto& r : s.checks) names.insert(r.check);
    CHECK(names == std::set<std::string>{"measures", "povm", "statistics", "reduction_equivalence",
                                         "mixture_identity", "posterior_consistency"});
    REQUIRE(s.projection_postulate.has_value());
    CHECK(s.projection_postulate->projective == e.expected_projective);
  }
}

TEST_CASE("verify_model flags a model that does not measure its claim") {
  const MeasurementModel wrong(DensityOperator::pure({1.0, 0.0}), cnot_qubit_model().model.u(),
                               Observable(pauli_z()), Observable(pauli_x()));
  const auto s = verify_model(wrong);
  CHECK_FALSE(all_pass(s.checks));
  CHECK_FALSE(s.projection_postulate.has_value());
}

TEST_CASE("affinity of the reduction map") {
  const auto m = random_indirect_model(9, 3, 3).model;
  CHECK(affinity_deviation(m, verification_states(3)) < 1e-9);
}

TEST_CASE("entangled analysis of Bell fixtures") {
  const auto app = LocalApparatusSpec{cnot_qubit_model().model};
  const auto zz = analyze_entangled(bell_scenario(pauli_z()), app);
  CHECK(all_pass(zz.checks));
  REQUIRE(zz.oracle_joint.has_value());
  CHECK(total_variation(zz.formula_joint, *zz.oracle_joint) < 1e-9);
  CHECK_FALSE(zz.independent);
  CHECK(zz.checks.size() == 4);

  const auto zx = analyze_entangled(bell_scenario(pauli_x()), std::nullopt);
  CHECK(all_pass(zx.checks));
  CHECK(zx.independent);
  CHECK_FALSE(zx.oracle_joint.has_value());
  CHECK(zx.checks.size() == 3);
  for (const auto& e : zx.formula_joint.entries()) CHECK(std::abs(e.probability - 0.25) < 1e-15);
}

TEST_CASE("sweep passes and is reproducible regardless of threading") {
  SweepOptions opts;
  opts.seed = 7;
  opts.trials = 6;
  opts.dim_min = 2;
  opts.dim_max = 3;
  opts.threads = 1;
  const auto serial = run_sweep(opts);
  opts.threads = 4;
  const auto parallel = run_sweep(opts);
  CHECK(all_pass(serial));
  CHECK(serial.size() == 11);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    CHECK(serial[k].check == parallel[k].check);
    CHECK(serial[k].max_deviation == parallel[k].max_deviation);
  }
}

TEST_CASE("sweep argument validation") {
  SweepOptions opts;
  opts.trials = 0;
  CHECK_THROWS_AS(run_sweep(opts), DomainError);
  opts.trials = 1;
  opts.dim_min = 3;
  opts.dim_max = 2;
  CHECK_THROWS_AS(run_sweep(opts), DomainError);
}
