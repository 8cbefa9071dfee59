/*
 * reductionlab C API.
 *
 * Opaque handles own C++ objects; every fallible call returns an rl_status
 * and leaves a message retrievable with rl_last_error() on the calling
 * thread. Strings returned through `char**` out-parameters are allocated by
 * the library and must be released with rl_string_free().
 *
 * Status values double as the command-line exit codes.
 */
#ifndef REDUCTIONLAB_H
#define REDUCTIONLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(REDUCTIONLAB_BUILDING)
#    define RL_API __declspec(dllexport)
#  else
#    define RL_API __declspec(dllimport)
#  endif
#else
#  define RL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rl_status {
  RL_OK = 0,
  RL_ERR_USAGE = 1,
  RL_ERR_NOT_FOUND = 2,
  RL_ERR_PARSE = 3,
  RL_ERR_VALIDATION = 4,
  RL_ERR_ZERO_PROBABILITY = 5,
  RL_ERR_INTERNAL = 7
} rl_status;

typedef struct rl_model rl_model;
typedef struct rl_state rl_state;
typedef struct rl_scenario rl_scenario;

typedef struct rl_options {
  double tol_op;   /* operator tolerance, max-entry norm (default 1e-9) */
  double tol_prob; /* probability tolerance (default 1e-10) */
  int timing;      /* nonzero: include elapsed_ms in reports */
} rl_options;

RL_API void rl_options_default(rl_options* opts);

RL_API const char* rl_version(void);
RL_API const char* rl_last_error(void);
RL_API void rl_string_free(char* s);

/* Models */
RL_API rl_status rl_model_load(const char* path, rl_model** out);
RL_API rl_status rl_model_parse(const char* json_text, rl_model** out);
/* Standard fixture by name; see rl_zoo_names. */
RL_API rl_status rl_model_zoo(const char* name, rl_model** out);
/* JSON array of fixture names. */
RL_API rl_status rl_zoo_names(char** out_json);
/* Model file document (format_version "1"). */
RL_API rl_status rl_model_export(const rl_model* model, char** out_json);
RL_API void rl_model_free(rl_model* model);
RL_API size_t rl_model_object_dim(const rl_model* model);
RL_API size_t rl_model_apparatus_dim(const rl_model* model);
RL_API const char* rl_model_name(const rl_model* model);

/* Runs the structural checks; *out_pass is 1 iff all pass. opts may be NULL. */
RL_API rl_status rl_model_verify(const rl_model* model, const rl_options* opts, char** out_json, int* out_pass);

/* States */
RL_API rl_status rl_state_parse(const char* spec, size_t dim, rl_state** out);
RL_API void rl_state_free(rl_state* state);
RL_API size_t rl_state_dim(const rl_state* state);
/* Writes dim*dim interleaved (re, im) pairs row-major into buf (capacity in doubles). */
RL_API rl_status rl_state_matrix(const rl_state* state, double* buf, size_t capacity);

/* Reduced object state for `outcome`. Returns RL_ERR_ZERO_PROBABILITY for
 * outcomes of probability <= 1e-10. *out_state may be NULL. */
RL_API rl_status rl_reduce(const rl_model* model, const rl_state* rho, double outcome, char** out_json,
                           double* out_probability, rl_state** out_state);

/* Entangled scenarios */
RL_API rl_status rl_scenario_load(const char* path, rl_scenario** out);
RL_API rl_status rl_scenario_parse(const char* json_text, const char* base_dir, rl_scenario** out);
RL_API void rl_scenario_free(rl_scenario* scenario);
RL_API rl_status rl_entangled(const rl_scenario* scenario, const rl_options* opts, char** out_json,
                              int* out_pass);

/* Seeded random property sweep over dims in [dim_min, dim_max]. */
RL_API rl_status rl_sweep(uint64_t seed, size_t trials, size_t dim_min, size_t dim_max, const rl_options* opts,
                          char** out_json, int* out_pass);

#ifdef __cplusplus
}
#endif

#endif /* REDUCTIONLAB_H */
