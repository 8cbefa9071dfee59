#include "reductionlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "reductionlab/checks.hpp"
#include "reductionlab/errors.hpp"
#include "reductionlab/io.hpp"
#include "reductionlab/zoo.hpp"

using namespace reductionlab;

struct rl_model {
  std::string name;
  MeasurementModel model;
  std::optional<bool> expected_projective;
};

struct rl_state {
  DensityOperator rho;
};

struct rl_scenario {
  LoadedScenario loaded;
};

namespace {

thread_local std::string last_error;

rl_status fail(rl_status status, const std::string& msg) {
  last_error = msg;
  return status;
}

// Runs `f`, translating library exceptions into status codes.
template <class F>
rl_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const FileNotFoundError& e) {
    return fail(RL_ERR_NOT_FOUND, e.what());
  } catch (const ParseError& e) {
    return fail(RL_ERR_PARSE, e.what());
  } catch (const ZeroProbabilityError& e) {
    return fail(RL_ERR_ZERO_PROBABILITY, e.what());
  } catch (const ValidationError& e) {
    return fail(RL_ERR_VALIDATION, e.what());
  } catch (const DimensionError& e) {
    return fail(RL_ERR_VALIDATION, e.what());
  } catch (const DomainError& e) {
    return fail(RL_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return fail(RL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RL_ERR_INTERNAL, "unknown error");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Tolerances tolerances(const rl_options* opts) {
  Tolerances tol;
  if (opts) {
    tol.op = opts->tol_op;
    tol.prob = opts->tol_prob;
  }
  return tol;
}

bool timing(const rl_options* opts) { return opts && opts->timing != 0; }

std::string dump(const Json& j) { return to_text(j); }

}  // namespace

extern "C" {

void rl_options_default(rl_options* opts) {
  if (!opts) return;
  opts->tol_op = kTolOp;
  opts->tol_prob = kTolProb;
  opts->timing = 0;
}

const char* rl_version(void) { return "1.0.0"; }

const char* rl_last_error(void) { return last_error.c_str(); }

void rl_string_free(char* s) { std::free(s); }

rl_status rl_model_load(const char* path, rl_model** out) {
  if (!path || !out) return fail(RL_ERR_USAGE, "rl_model_load: null argument");
  return guarded([&] {
    LoadedModel m = load_model_file(path);
    *out = new rl_model{m.name, std::move(m.model), m.expected_projective};
    return RL_OK;
  });
}

rl_status rl_model_parse(const char* json_text, rl_model** out) {
  if (!json_text || !out) return fail(RL_ERR_USAGE, "rl_model_parse: null argument");
  return guarded([&] {
    LoadedModel m = parse_model(json_text);
    *out = new rl_model{m.name, std::move(m.model), m.expected_projective};
    return RL_OK;
  });
}

rl_status rl_model_zoo(const char* name, rl_model** out) {
  if (!name || !out) return fail(RL_ERR_USAGE, "rl_model_zoo: null argument");
  return guarded([&] {
    for (auto& entry : standard_zoo()) {
      if (entry.name == name) {
        *out = new rl_model{entry.name, std::move(entry.model), entry.expected_projective};
        return RL_OK;
      }
    }
    return fail(RL_ERR_USAGE, std::string("unknown zoo model '") + name + "'");
  });
}

rl_status rl_zoo_names(char** out_json) {
  if (!out_json) return fail(RL_ERR_USAGE, "rl_zoo_names: null argument");
  return guarded([&] {
    Json names = Json::array();
    for (const auto& entry : standard_zoo()) names.push_back(entry.name);
    *out_json = duplicate(names.dump());
    return RL_OK;
  });
}

rl_status rl_model_export(const rl_model* model, char** out_json) {
  if (!model || !out_json) return fail(RL_ERR_USAGE, "rl_model_export: null argument");
  return guarded([&] {
    *out_json = duplicate(model_to_text(model->model, model->name, model->expected_projective));
    return RL_OK;
  });
}

void rl_model_free(rl_model* model) { delete model; }

size_t rl_model_object_dim(const rl_model* model) { return model ? model->model.object_dim() : 0; }

size_t rl_model_apparatus_dim(const rl_model* model) { return model ? model->model.apparatus_dim() : 0; }

const char* rl_model_name(const rl_model* model) { return model ? model->name.c_str() : ""; }

rl_status rl_model_verify(const rl_model* model, const rl_options* opts, char** out_json, int* out_pass) {
  if (!model || !out_json) return fail(RL_ERR_USAGE, "rl_model_verify: null argument");
  return guarded([&] {
    const VerifySummary summary = verify_model(model->model, tolerances(opts));
    Json doc = verify_to_json(model->name, model->model, summary, timing(opts));
    if (model->expected_projective) doc["expected_projective"] = *model->expected_projective;
    *out_json = duplicate(dump(doc));
    if (out_pass) *out_pass = all_pass(summary.checks) ? 1 : 0;
    return RL_OK;
  });
}

rl_status rl_state_parse(const char* spec, size_t dim, rl_state** out) {
  if (!spec || !out) return fail(RL_ERR_USAGE, "rl_state_parse: null argument");
  return guarded([&] {
    *out = new rl_state{parse_state_spec(spec, dim)};
    return RL_OK;
  });
}

void rl_state_free(rl_state* state) { delete state; }

size_t rl_state_dim(const rl_state* state) { return state ? state->rho.dim() : 0; }

rl_status rl_state_matrix(const rl_state* state, double* buf, size_t capacity) {
  if (!state || !buf) return fail(RL_ERR_USAGE, "rl_state_matrix: null argument");
  const std::size_t d = state->rho.dim();
  if (capacity < 2 * d * d) return fail(RL_ERR_USAGE, "rl_state_matrix: buffer too small");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      buf[2 * (i * d + j)] = state->rho.matrix()(i, j).real();
      buf[2 * (i * d + j) + 1] = state->rho.matrix()(i, j).imag();
    }
  return RL_OK;
}

rl_status rl_reduce(const rl_model* model, const rl_state* rho, double outcome, char** out_json,
                    double* out_probability, rl_state** out_state) {
  if (!model || !rho) return fail(RL_ERR_USAGE, "rl_reduce: null argument");
  return guarded([&] {
    const Json doc = reduce_to_json(model->model, rho->rho, outcome);
    if (out_probability) *out_probability = doc["probability"].get<double>();
    if (out_state) *out_state = new rl_state{state_reduction(model->model, rho->rho, outcome)};
    if (out_json) *out_json = duplicate(dump(doc));
    return RL_OK;
  });
}

rl_status rl_scenario_load(const char* path, rl_scenario** out) {
  if (!path || !out) return fail(RL_ERR_USAGE, "rl_scenario_load: null argument");
  return guarded([&] {
    *out = new rl_scenario{load_scenario_file(path)};
    return RL_OK;
  });
}

rl_status rl_scenario_parse(const char* json_text, const char* base_dir, rl_scenario** out) {
  if (!json_text || !out) return fail(RL_ERR_USAGE, "rl_scenario_parse: null argument");
  return guarded([&] {
    *out = new rl_scenario{parse_scenario(json_text, "<scenario>", base_dir ? base_dir : "")};
    return RL_OK;
  });
}

void rl_scenario_free(rl_scenario* scenario) { delete scenario; }

rl_status rl_entangled(const rl_scenario* scenario, const rl_options* opts, char** out_json, int* out_pass) {
  if (!scenario || !out_json) return fail(RL_ERR_USAGE, "rl_entangled: null argument");
  return guarded([&] {
    const EntangledSummary summary =
        analyze_entangled(scenario->loaded.scenario, scenario->loaded.apparatus, tolerances(opts));
    *out_json = duplicate(dump(entangled_to_json(summary, timing(opts))));
    if (out_pass) *out_pass = all_pass(summary.checks) ? 1 : 0;
    return RL_OK;
  });
}

rl_status rl_sweep(uint64_t seed, size_t trials, size_t dim_min, size_t dim_max, const rl_options* opts,
                   char** out_json, int* out_pass) {
  if (!out_json) return fail(RL_ERR_USAGE, "rl_sweep: null argument");
  if (trials == 0) return fail(RL_ERR_USAGE, "sweep: trials must be at least 1");
  if (dim_min == 0 || dim_min > dim_max) return fail(RL_ERR_USAGE, "sweep: dims must satisfy 1 <= min <= max");
  if (dim_max > 8) return fail(RL_ERR_USAGE, "sweep: dims above 8 are not supported");
  return guarded([&] {
    SweepOptions so;
    so.seed = seed;
    so.trials = trials;
    so.dim_min = dim_min;
    so.dim_max = dim_max;
    so.tol = tolerances(opts);
    const auto reports = run_sweep(so);
    *out_json = duplicate(dump(sweep_to_json(so, reports, timing(opts))));
    if (out_pass) *out_pass = all_pass(reports) ? 1 : 0;
    return RL_OK;
  });
}

}  // extern "C"
