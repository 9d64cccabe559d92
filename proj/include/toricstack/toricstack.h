#ifndef TORICSTACK_TORICSTACK_H
#define TORICSTACK_TORICSTACK_H

/*
 * C interface to the toricstack library: symplectic toric DM stacks built
 * as quotients C^N //_a A_hat of a finite extension of the standard torus.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a ts_status; on failure a diagnostic is
 * available from ts_last_error() on the calling thread until the next call.
 * Strings returned through char** are owned by the caller and released
 * with ts_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TORICSTACK_BUILDING)
#    define TS_API __declspec(dllexport)
#  else
#    define TS_API __declspec(dllimport)
#  endif
#else
#  define TS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
    TS_OK = 0,
    TS_ERR_INVALID_ARGUMENT = 1, /* null pointer or bad option value */
    TS_ERR_INVALID_INPUT = 2,    /* input failed parsing or validation */
    TS_ERR_IO = 3,               /* file could not be read */
    TS_ERR_PRECONDITION = 4,     /* e.g. stages requested without a stages block */
    TS_ERR_INTERNAL = 5
} ts_status;

/* Process exit codes reported by ts_*_exit_code and used by the CLI. */
enum {
    TS_EXIT_OK = 0,
    TS_EXIT_IRREGULAR = 2,
    TS_EXIT_INVALID = 3,
    TS_EXIT_EMPTY = 4,
    TS_EXIT_STAGES_INCONSISTENT = 5,
    TS_EXIT_NUMERIC_DISAGREEMENT = 6
};

typedef enum ts_format { TS_FORMAT_JSON = 0, TS_FORMAT_TEXT = 1 } ts_format;

typedef struct ts_input ts_input;
typedef struct ts_analysis ts_analysis;
typedef struct ts_stages ts_stages;

typedef struct ts_verify_options {
    size_t samples;
    uint64_t seed;
    double tol;
    double fd_step;
} ts_verify_options;

TS_API const char* ts_version(void);
TS_API const char* ts_last_error(void);
/* Name of the input field responsible for the last TS_ERR_INVALID_INPUT, or "". */
TS_API const char* ts_last_error_field(void);
TS_API void ts_string_free(char* s);

TS_API void ts_verify_options_init(ts_verify_options* opts);

TS_API ts_status ts_input_from_json(const char* json_text, ts_input** out);
TS_API ts_status ts_input_from_file(const char* path, ts_input** out);
TS_API void ts_input_free(ts_input* input);

/* Exact analysis; `verify` may be NULL to skip numeric verification. */
TS_API ts_status ts_analyze(const ts_input* input, const ts_verify_options* verify, ts_analysis** out);
TS_API int ts_analysis_exit_code(const ts_analysis* analysis);
TS_API ts_status ts_analysis_render(const ts_analysis* analysis, ts_format format, char** out);
/* OFF-style V-representation of the moment polytope. */
TS_API ts_status ts_analysis_polytope_off(const ts_analysis* analysis, char** out);
TS_API void ts_analysis_free(ts_analysis* analysis);

TS_API ts_status ts_run_stages(const ts_input* input, ts_stages** out);
TS_API int ts_stages_exit_code(const ts_stages* stages);
TS_API ts_status ts_stages_render(const ts_stages* stages, ts_format format, char** out);
TS_API void ts_stages_free(ts_stages* stages);

/* Invariant factors of Z^cols / (row lattice of M) for a row-major
 * rows x cols integer matrix, as a JSON object
 * {"invariant_factors": [...], "free_rank": k}. */
TS_API ts_status ts_row_lattice_quotient(const int64_t* entries, size_t rows, size_t cols, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* TORICSTACK_TORICSTACK_H */
