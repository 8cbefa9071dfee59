#pragma once

// JSON model and scenario files, state specifications and report documents.
//
// Model file (format_version "1"):
//   {
//     "format_version": "1",
//     "name": "cnot",                      optional
//     "object_dim": 2, "apparatus_dim": 2,
//     "sigma": M, "u": M, "a_matrix": M, "b_matrix": M,
//     "object_hamiltonian": M,             optional, zero if absent
//     "expected_projective": true          optional, informational
//   }
// A matrix M is row-major: either a list of rows of [re, im] pairs or a flat
// list of dim*dim [re, im] pairs. Writers emit the list-of-rows form.
//
// Scenario file (format_version "1"):
//   { "format_version": "1", "dims": [d1, d2], "rho12": M, "a_matrix": M,
//     "x_matrix": M, "h1": M, "h2": M, "t": 0.0, "tau": 0.0,
//     "apparatus": <model object> | "<model path relative to the file>" }
// with h1, h2 and apparatus optional.
//
// Load errors carry "<source>:<line>: " prefixes pointing at the offending
// key (or at the syntax error).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reductionlab/checks.hpp"
#include "reductionlab/entangled.hpp"
#include "reductionlab/measurement.hpp"
#include "reductionlab/zoo.hpp"

namespace reductionlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

Json matrix_to_json(const ComplexMatrix& m);

// Two-space indented JSON with a trailing newline. Arrays nesting at most
// two levels (complex pairs, matrix rows) stay on one line.
std::string to_text(const Json& j);
ComplexMatrix matrix_from_json(const Json& j, std::size_t dim);

struct LoadedModel {
  std::string name;
  MeasurementModel model;
  std::optional<bool> expected_projective;
};

Json model_to_json(const MeasurementModel& model, const std::string& name = {},
                   std::optional<bool> expected_projective = std::nullopt);
std::string model_to_text(const MeasurementModel& model, const std::string& name = {},
                          std::optional<bool> expected_projective = std::nullopt);
std::string zoo_entry_to_text(const ZooEntry& entry);

// Throws ParseError or ValidationError, each prefixed with `source:line:`.
LoadedModel parse_model(const std::string& text, const std::string& source = "<model>");
// Also throws FileNotFoundError.
LoadedModel load_model_file(const std::filesystem::path& path);

struct LoadedScenario {
  EntangledScenario scenario;
  std::optional<LocalApparatusSpec> apparatus;
};

LoadedScenario parse_scenario(const std::string& text, const std::string& source = "<scenario>",
                              const std::filesystem::path& base_dir = {});
LoadedScenario load_scenario_file(const std::filesystem::path& path);

// State specifications for a `dim`-level object:
//   "<k>"           basis state |k>
//   "+" / "-"       (|0> ± |1>)/sqrt(2)
//   "+i" / "-i"     (|0> ± i|1>)/sqrt(2)
//   "uniform"       equal superposition of all basis states
//   "mixed"         1/dim
//   "random:<seed>" seeded random mixed state
//   "@<path>"       JSON file holding a matrix (or {"matrix": M})
DensityOperator parse_state_spec(const std::string& spec, std::size_t dim);

// Report documents. Elapsed times are included only when `timing` is set,
// so fixed inputs give byte-identical output.
Json report_to_json(const Report& r, bool timing);
Json verify_to_json(const std::string& name, const MeasurementModel& model, const VerifySummary& summary,
                    bool timing);
Json reduce_to_json(const MeasurementModel& model, const DensityOperator& rho, double outcome);
Json entangled_to_json(const EntangledSummary& summary, bool timing);
Json sweep_to_json(const SweepOptions& opts, const std::vector<Report>& reports, bool timing);
Json distribution_to_json(const OutcomeDistribution& d);
Json joint_to_json(const JointDistribution& j);

}  // namespace reductionlab
