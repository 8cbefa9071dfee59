#include "reductionlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "reductionlab/errors.hpp"
#include "reductionlab/random.hpp"

namespace reductionlab {

namespace {

std::size_t line_at(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

// Where error messages point to: the document text, its name, and the byte
// offset at which keys of the current object start being searched.
struct Source {
  const std::string& text;
  std::string name;
  std::size_t offset = 0;

  std::size_t key_position(const std::string& key) const {
    const std::regex re("\"" + key + "\"\\s*:");
    std::smatch match;
    auto begin = text.begin() + static_cast<std::ptrdiff_t>(std::min(offset, text.size()));
    if (std::regex_search(begin, text.end(), match, re))
      return static_cast<std::size_t>(match.position(0)) + static_cast<std::size_t>(begin - text.begin());
    return offset;
  }

  std::string prefix(const std::string& key) const {
    return name + ":" + std::to_string(line_at(text, key_position(key))) + ": ";
  }

  [[noreturn]] void parse_fail(const std::string& key, const std::string& msg) const {
    throw ParseError(prefix(key) + (key.empty() ? "" : "field '" + key + "': ") + msg);
  }

  [[noreturn]] void validation_fail(const std::string& key, const std::string& msg) const {
    throw ValidationError(prefix(key) + (key.empty() ? "" : "field '" + key + "': ") + msg, key);
  }
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_document(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t pos = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(source + ":" + std::to_string(line_at(text, pos)) + ": " + e.what());
  }
}

Complex complex_from_json(const Json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError("complex entries must be [re, im] number pairs");
  return {v[0].get<double>(), v[1].get<double>()};
}

const Json& require_key(const Json& obj, const Source& src, const std::string& key) {
  if (!obj.contains(key)) src.parse_fail(key, "missing required field '" + key + "'");
  return obj.at(key);
}

std::size_t read_dim(const Json& obj, const Source& src, const std::string& key) {
  const Json& v = require_key(obj, src, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) src.parse_fail(key, "expected a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

double read_real(const Json& obj, const Source& src, const std::string& key) {
  const Json& v = require_key(obj, src, key);
  if (!v.is_number()) src.parse_fail(key, "expected a number");
  return v.get<double>();
}

ComplexMatrix read_matrix(const Json& obj, const Source& src, const std::string& key, std::size_t dim) {
  const Json& value = require_key(obj, src, key);
  try {
    return matrix_from_json(value, dim);
  } catch (const ParseError& e) {
    src.parse_fail(key, e.what());
  }
}

void check_version(const Json& obj, const Source& src) {
  const Json& v = require_key(obj, src, "format_version");
  if (!v.is_string() || v.get<std::string>() != kFormatVersion)
    src.parse_fail("format_version", std::string("unsupported format_version, expected \"") + kFormatVersion + "\"");
}

DensityOperator read_density(const Json& obj, const Source& src, const std::string& key, std::size_t dim,
                             std::optional<SubsystemDims> dims = std::nullopt) {
  ComplexMatrix m = read_matrix(obj, src, key, dim);
  try {
    return DensityOperator(std::move(m), std::move(dims));
  } catch (const Error& e) {
    src.validation_fail(key, e.what());
  }
}

Observable read_observable(const Json& obj, const Source& src, const std::string& key, std::size_t dim) {
  ComplexMatrix m = read_matrix(obj, src, key, dim);
  if (!is_hermitian(m)) src.validation_fail(key, "observable is not Hermitian");
  return Observable(std::move(m));
}

LoadedModel model_from_json(const Json& obj, const Source& src) {
  if (!obj.is_object()) src.parse_fail("", "model document must be a JSON object");
  check_version(obj, src);
  const std::size_t d = read_dim(obj, src, "object_dim");
  const std::size_t m = read_dim(obj, src, "apparatus_dim");

  DensityOperator sigma = read_density(obj, src, "sigma", m);
  ComplexMatrix u = read_matrix(obj, src, "u", d * m);
  Observable a_obs = read_observable(obj, src, "a_matrix", d);
  Observable b_obs = read_observable(obj, src, "b_matrix", m);
  std::optional<ComplexMatrix> h;
  if (obj.contains("object_hamiltonian")) h = read_matrix(obj, src, "object_hamiltonian", d);

  std::string name;
  if (obj.contains("name")) {
    if (!obj["name"].is_string()) src.parse_fail("name", "expected a string");
    name = obj["name"].get<std::string>();
  }
  std::optional<bool> expected;
  if (obj.contains("expected_projective")) {
    if (!obj["expected_projective"].is_boolean()) src.parse_fail("expected_projective", "expected a boolean");
    expected = obj["expected_projective"].get<bool>();
  }

  try {
    return {name, MeasurementModel(std::move(sigma), std::move(u), std::move(b_obs), std::move(a_obs), std::move(h)),
            expected};
  } catch (const ValidationError& e) {
    src.validation_fail(e.field().empty() ? "u" : e.field(), e.what());
  }
}

Json state_json(const DensityOperator& rho) { return matrix_to_json(rho.matrix()); }

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw ParseError("matrix must be an array");
  ComplexMatrix out(dim);
  // Rows hold [re, im] pairs; a flat list holds the pairs directly.
  const bool flat = j.size() == dim * dim && j[0].is_array() && !j[0].empty() && j[0][0].is_number();
  if (flat) {
    for (std::size_t k = 0; k < dim * dim; ++k) out(k / dim, k % dim) = complex_from_json(j[k]);
    return out;
  }
  if (j.size() != dim)
    throw ParseError("expected " + std::to_string(dim) + " rows or " + std::to_string(dim * dim) + " entries, got " +
                      std::to_string(j.size()));
  for (std::size_t i = 0; i < dim; ++i) {
    if (!j[i].is_array() || j[i].size() != dim)
      throw ParseError("row " + std::to_string(i) + " must hold " + std::to_string(dim) + " entries");
    for (std::size_t k = 0; k < dim; ++k) out(i, k) = complex_from_json(j[i][k]);
  }
  return out;
}

namespace {

std::size_t array_depth(const Json& j) {
  if (j.is_object()) return 99;
  if (!j.is_array()) return 0;
  std::size_t depth = 0;
  for (const auto& e : j) depth = std::max(depth, array_depth(e));
  return depth + 1;
}

void write_text(const Json& j, std::size_t indent, std::string& out) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (const auto& [key, value] : j.items()) {
      out += inner + Json(key).dump() + ": ";
      write_text(value, indent + 2, out);
      out += ++k < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array() && !j.empty() && array_depth(j) > 2) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += inner;
      write_text(j[k], indent + 2, out);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) out += ", ";
      write_text(j[k], indent, out);
    }
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string to_text(const Json& j) {
  std::string out;
  write_text(j, 0, out);
  return out + "\n";
}

Json model_to_json(const MeasurementModel& model, const std::string& name, std::optional<bool> expected_projective) {
  Json j;
  j["format_version"] = kFormatVersion;
  if (!name.empty()) j["name"] = name;
  j["object_dim"] = model.object_dim();
  j["apparatus_dim"] = model.apparatus_dim();
  j["sigma"] = matrix_to_json(model.sigma().matrix());
  j["u"] = matrix_to_json(model.u());
  j["a_matrix"] = matrix_to_json(model.measured().matrix());
  j["b_matrix"] = matrix_to_json(model.probe().matrix());
  j["object_hamiltonian"] = matrix_to_json(model.object_hamiltonian());
  if (expected_projective) j["expected_projective"] = *expected_projective;
  return j;
}

std::string model_to_text(const MeasurementModel& model, const std::string& name,
                          std::optional<bool> expected_projective) {
  return to_text(model_to_json(model, name, expected_projective));
}

std::string zoo_entry_to_text(const ZooEntry& entry) {
  return model_to_text(entry.model, entry.name, entry.expected_projective);
}

LoadedModel parse_model(const std::string& text, const std::string& source) {
  const Json doc = parse_document(text, source);
  return model_from_json(doc, Source{text, source});
}

LoadedModel load_model_file(const std::filesystem::path& path) {
  return parse_model(read_file(path), path.string());
}

LoadedScenario parse_scenario(const std::string& text, const std::string& source,
                              const std::filesystem::path& base_dir) {
  const Json obj = parse_document(text, source);
  const Source src{text, source};
  if (!obj.is_object()) src.parse_fail("", "scenario document must be a JSON object");
  check_version(obj, src);

  const Json& dims = require_key(obj, src, "dims");
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer() ||
      dims[0].get<long long>() <= 0 || dims[1].get<long long>() <= 0)
    src.parse_fail("dims", "expected [d1, d2] with positive integers");
  const auto d1 = static_cast<std::size_t>(dims[0].get<long long>());
  const auto d2 = static_cast<std::size_t>(dims[1].get<long long>());

  DensityOperator rho12 = read_density(obj, src, "rho12", d1 * d2, SubsystemDims{d1, d2});
  Observable a_obs = read_observable(obj, src, "a_matrix", d1);
  Observable x_obs = read_observable(obj, src, "x_matrix", d2);
  ComplexMatrix h1 = obj.contains("h1") ? read_matrix(obj, src, "h1", d1) : ComplexMatrix::zero(d1);
  ComplexMatrix h2 = obj.contains("h2") ? read_matrix(obj, src, "h2", d2) : ComplexMatrix::zero(d2);
  const double t = read_real(obj, src, "t");
  const double tau = read_real(obj, src, "tau");

  LoadedScenario out{EntangledScenario{std::move(rho12), std::move(a_obs), std::move(x_obs), std::move(h1),
                                       std::move(h2), t, tau},
                     std::nullopt};
  try {
    validate(out.scenario);
  } catch (const ValidationError& e) {
    src.validation_fail(e.field(), e.what());
  }

  if (obj.contains("apparatus")) {
    const Json& app = obj["apparatus"];
    LoadedModel loaded = [&] {
      if (app.is_string()) return load_model_file(base_dir / app.get<std::string>());
      Source nested{text, source, src.key_position("apparatus")};
      return model_from_json(app, nested);
    }();
    out.apparatus = LocalApparatusSpec{std::move(loaded.model)};
    try {
      validate(*out.apparatus, out.scenario);
    } catch (const ValidationError& e) {
      src.validation_fail("apparatus", e.what());
    }
  }
  return out;
}

LoadedScenario load_scenario_file(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.string(), path.parent_path());
}

DensityOperator parse_state_spec(const std::string& spec, std::size_t dim) {
  const double r = 1.0 / std::sqrt(2.0);
  auto qubit_pair = [&](Complex second) {
    if (dim < 2) throw DomainError("state '" + spec + "' needs at least two levels");
    std::vector<Complex> ket(dim, 0.0);
    ket[0] = r;
    ket[1] = second * r;
    return DensityOperator::pure(ket);
  };
  if (spec == "+") return qubit_pair(1.0);
  if (spec == "-") return qubit_pair(-1.0);
  if (spec == "+i") return qubit_pair(Complex(0.0, 1.0));
  if (spec == "-i") return qubit_pair(Complex(0.0, -1.0));
  if (spec == "mixed") return DensityOperator::maximally_mixed(dim);
  if (spec == "uniform") return DensityOperator::pure(std::vector<Complex>(dim, 1.0));
  if (spec.rfind("random:", 0) == 0) {
    try {
      Rng rng(std::stoull(spec.substr(7)));
      return random_density(rng, dim);
    } catch (const std::logic_error&) {
      throw ParseError("bad random state seed in '" + spec + "'");
    }
  }
  if (!spec.empty() && spec[0] == '@') {
    const std::filesystem::path path = spec.substr(1);
    const std::string text = read_file(path);
    const Json doc = parse_document(text, path.string());
    const Source src{text, path.string()};
    const Json wrapper = doc.is_object() ? doc : Json{{"matrix", doc}};
    return read_density(wrapper, src, "matrix", dim);
  }
  if (!spec.empty() && std::all_of(spec.begin(), spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const std::size_t k = std::stoul(spec);
    if (k >= dim) throw DomainError("basis index " + spec + " out of range for dim " + std::to_string(dim));
    std::vector<Complex> ket(dim, 0.0);
    ket[k] = 1.0;
    return DensityOperator::pure(ket);
  }
  throw ParseError("unrecognized state specification '" + spec + "'");
}

Json report_to_json(const Report& r, bool timing) {
  Json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["max_deviation"] = r.max_deviation;
  j["tolerance"] = r.tolerance;
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

namespace {

Json reports_json(const std::vector<Report>& reports, bool timing) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r, timing));
  return arr;
}

}  // namespace

Json distribution_to_json(const OutcomeDistribution& d) {
  Json arr = Json::array();
  for (const auto& [outcome, p] : d.entries()) arr.push_back(Json{{"outcome", outcome}, {"probability", p}});
  return arr;
}

Json joint_to_json(const JointDistribution& j) {
  Json arr = Json::array();
  for (const auto& e : j.entries()) arr.push_back(Json{{"a", e.a}, {"x", e.x}, {"probability", e.probability}});
  return arr;
}

Json verify_to_json(const std::string& name, const MeasurementModel& model, const VerifySummary& summary,
                    bool timing) {
  Json j;
  j["command"] = "verify";
  j["model"] = name;
  j["object_dim"] = model.object_dim();
  j["apparatus_dim"] = model.apparatus_dim();
  j["checks"] = reports_json(summary.checks, timing);
  if (summary.projection_postulate) {
    const auto& pp = *summary.projection_postulate;
    Json p;
    p["projective"] = pp.projective;
    p["max_deviation"] = pp.max_deviation;
    if (pp.witness) {
      p["witness"] = Json{{"outcome", pp.witness->outcome},
                          {"input_state", state_json(pp.witness->input)},
                          {"reduced_state", state_json(pp.witness->reduced)},
                          {"predicted_state", state_json(pp.witness->predicted)},
                          {"deviation", pp.witness->deviation}};
    }
    j["projection_postulate"] = std::move(p);
  } else {
    j["projection_postulate"] = nullptr;
  }
  j["pass"] = all_pass(summary.checks);
  return j;
}

Json reduce_to_json(const MeasurementModel& model, const DensityOperator& rho, double outcome) {
  const OutcomeDistribution dist = outcome_probability(model, rho);
  const DensityOperator reduced = state_reduction(model, rho, outcome);
  Json j;
  j["command"] = "reduce";
  j["outcome"] = outcome;
  j["probability"] = dist.probability(outcome);
  j["state"] = state_json(reduced);
  j["distribution"] = distribution_to_json(dist);
  return j;
}

Json entangled_to_json(const EntangledSummary& s, bool timing) {
  Json j;
  j["command"] = "entangled";
  j["formula_joint"] = joint_to_json(s.formula_joint);
  if (s.oracle_joint) {
    j["oracle_joint"] = joint_to_json(*s.oracle_joint);
    j["formula_oracle_tv"] = total_variation(s.formula_joint, *s.oracle_joint);
  } else {
    j["oracle_joint"] = nullptr;
  }
  j["marginal_a"] = distribution_to_json(s.formula_joint.marginal_a());
  j["marginal_x"] = distribution_to_json(s.formula_joint.marginal_x());
  j["prior_state"] = state_json(s.prior);
  Json posts = Json::array();
  for (const auto& p : s.posteriors) {
    posts.push_back(Json{{"outcome", p.outcome},
                         {"probability", p.probability},
                         {"state", state_json(p.state)},
                         {"conditional", distribution_to_json(p.conditional)},
                         {"posterior_born", distribution_to_json(p.posterior_born)}});
  }
  j["posteriors"] = std::move(posts);
  j["independent"] = s.independent;
  j["checks"] = reports_json(s.checks, timing);
  j["pass"] = all_pass(s.checks);
  return j;
}

Json sweep_to_json(const SweepOptions& opts, const std::vector<Report>& reports, bool timing) {
  Json j;
  j["command"] = "sweep";
  j["seed"] = opts.seed;
  j["trials"] = opts.trials;
  j["dims"] = Json::array({opts.dim_min, opts.dim_max});
  j["checks"] = reports_json(reports, timing);
  j["pass"] = all_pass(reports);
  return j;
}

}  // namespace reductionlab
