#ifndef VST_VST_H
#define VST_VST_H

/* C interface to the transpose-scheduling library. Handles are opaque;
 * every call that can fail returns a vst_status and leaves a message that
 * vst_last_error() returns on the same thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VST_BUILDING)
#    define VST_API __declspec(dllexport)
#  else
#    define VST_API __declspec(dllimport)
#  endif
#else
#  define VST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vst_status {
  VST_OK = 0,
  VST_E_STRUCTURAL = 1,
  VST_E_CAPACITY = 2,
  VST_E_VALIDATION = 3,
  VST_E_ILL_DEFINED_EDGES = 4,
  VST_E_NOT_CONNECTED = 5,
  VST_E_UNSUPPORTED_INPUT = 6,
  VST_E_SCOPE = 7,
  VST_E_INPUT = 8,
  VST_E_PARSE = 9,
  VST_E_DOMAIN = 10,
  VST_E_CONTRACT = 11,
  VST_E_BUDGET = 12,
  VST_E_INFEASIBLE = 13,
  VST_E_INTERNAL = 14,
  VST_E_IO = 15,
  VST_E_INVALID_ARGUMENT = 16,
  /* The command ran and produced output, but its verdict is a failure
   * (e.g. a schedule with conflicts). See vst_result_exit_code. */
  VST_E_REJECTED = 17
} vst_status;

typedef struct vst_network vst_network;
typedef struct vst_result vst_result;

typedef enum vst_word_mode {
  VST_WORDS_EXACT = 0,
  VST_WORDS_LOAD_BALANCED = 1,
  VST_WORDS_FIRST_FOUND = 2
} vst_word_mode;

typedef struct vst_options {
  uint64_t budget;           /* search nodes per search */
  uint32_t bound;            /* makespan bound for scheduling; 0 = none */
  uint32_t max_extra_length; /* extra word length allowed by the factorization search */
  int search;                /* nonzero: search for a spanning factorization even on Cayley graphs */
  vst_word_mode word_mode;
  unsigned jobs;             /* worker threads for all-sources BFS */
  uint64_t seed;             /* accepted for reproducibility; searches are deterministic */
} vst_options;

typedef struct vst_model_options {
  const char* cost_ratio;  /* rho, "a/b" or decimal */
  uint64_t matrix_size;    /* N; 0 = largest P among the candidates */
  uint64_t iterations;     /* M */
  const char* beta;
  uint32_t exponent;       /* alpha(N) = beta N^exponent */
  const char* wire_budget; /* gamma_max; required */
  uint64_t budget;
  unsigned jobs;
} vst_model_options;

VST_API const char* vst_version(void);
VST_API const char* vst_status_name(vst_status status);
/* 0 ok, 1 input/validation, 2 infeasible or budget exhausted, 3 internal. */
VST_API int vst_status_exit_code(vst_status status);
/* Message for the last failing call on this thread; "" if none. */
VST_API const char* vst_last_error(void);

VST_API void vst_options_init(vst_options* options);
VST_API void vst_model_options_init(vst_model_options* options);

VST_API vst_status vst_network_from_json(const char* json, size_t cap, vst_network** out);
VST_API vst_status vst_network_from_builtin(const char* name, vst_network** out);
VST_API void vst_network_free(vst_network* network);
VST_API size_t vst_network_vertex_count(const vst_network* network);
VST_API size_t vst_network_degree(const vst_network* network);
VST_API int vst_network_is_cayley(const vst_network* network);
/* "src dst gen" per arc. Caller frees with vst_string_free. */
VST_API vst_status vst_network_arc_dump(const vst_network* network, char** out);
VST_API void vst_string_free(char* text);

/* Subcommands. On VST_OK or VST_E_REJECTED, *out holds the artifacts. */
VST_API vst_status vst_bounds(const vst_network* network, const vst_options* options, vst_result** out);
VST_API vst_status vst_words(const vst_network* network, const vst_options* options, vst_result** out);
VST_API vst_status vst_factorize(const vst_network* network, const vst_options* options,
                                 const char* words_json, vst_result** out);
VST_API vst_status vst_schedule(const vst_network* network, const vst_options* options,
                                const char* factorization_json, vst_result** out);
VST_API vst_status vst_simulate(const vst_network* network, const vst_options* options, const char* schedule_csv,
                                const char* factorization_json, vst_result** out);
VST_API vst_status vst_pipeline(const vst_network* network, const vst_options* options, vst_result** out);
VST_API vst_status vst_compare(const char* const* descriptors, size_t count, const vst_model_options* options,
                               vst_result** out);

VST_API size_t vst_result_artifact_count(const vst_result* result);
VST_API const char* vst_result_artifact_name(const vst_result* result, size_t index);
VST_API const char* vst_result_artifact_text(const vst_result* result, size_t index);
/* NULL when absent. */
VST_API const char* vst_result_find(const vst_result* result, const char* name);
VST_API const char* vst_result_summary(const vst_result* result);
VST_API const char* vst_result_message(const vst_result* result);
VST_API int vst_result_exit_code(const vst_result* result);
VST_API void vst_result_free(vst_result* result);

#ifdef __cplusplus
}
#endif

#endif
