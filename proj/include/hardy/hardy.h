#ifndef HARDY_H
#define HARDY_H

/* C interface to the circle-domain boundary value solver.
 *
 * Every function returning hardy_status leaves a thread-local error record on
 * failure, readable with hardy_last_error() and hardy_last_error_kind().
 * Strings returned through char** outputs are owned by the caller and must be
 * released with hardy_string_free(). */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HARDY_API __declspec(dllexport)
#else
#define HARDY_API __attribute__((visibility("default")))
#endif

typedef struct hardy_domain hardy_domain;
typedef struct hardy_solver hardy_solver;
typedef struct hardy_function hardy_function;

typedef enum hardy_status {
    HARDY_OK = 0,
    HARDY_ERR_VALIDATION = 1,
    HARDY_ERR_NUMERICAL = 2,
    HARDY_ERR_INTERNAL = 3
} hardy_status;

HARDY_API const char* hardy_version(void);
HARDY_API const char* hardy_last_error(void);
HARDY_API const char* hardy_last_error_kind(void);
/* {"error": kind, "message": text} for the last failure on this thread. */
HARDY_API hardy_status hardy_last_error_json(char** out);
HARDY_API void hardy_string_free(char* s);

/* Worker threads for solver builds and metric grids (default 1). */
HARDY_API void hardy_set_threads(int threads);
HARDY_API int hardy_threads(void);

/* {"outer": {"center": [x, y], "radius": r}, "holes": [...], "margin": m} */
HARDY_API hardy_status hardy_domain_from_json(const char* json, hardy_domain** out);
HARDY_API hardy_status hardy_domain_to_json(const hardy_domain* domain, char** out);
HARDY_API int hardy_domain_components(const hardy_domain* domain);
HARDY_API void hardy_domain_free(hardy_domain* domain);

HARDY_API hardy_status hardy_solver_build(const hardy_domain* domain, int modes, hardy_solver** out);
/* config: {"modes", "cutoff", "tol_in", "inversion", "max_condition", "threads"}, all optional. */
HARDY_API hardy_status hardy_solver_build_json(const hardy_domain* domain, const char* config,
                                               hardy_solver** out);
HARDY_API hardy_status hardy_solver_diagnostics_json(const hardy_solver* solver, char** out);
HARDY_API int hardy_solver_modes(const hardy_solver* solver);
HARDY_API int hardy_solver_cutoff(const hardy_solver* solver);
HARDY_API void hardy_solver_free(hardy_solver* solver);

/* data: {"components": [{"modes": {...}} | {"samples": [...]}, ...]}.
 * Writes {"function", "coefficients", "report", "modes", "cutoff"} to out_json
 * and, when out_function is not null, a handle to the solution. */
HARDY_API hardy_status hardy_solve_json(const hardy_solver* solver, const char* data,
                                        char** out_json, hardy_function** out_function);

HARDY_API hardy_status hardy_function_from_json(const char* json, hardy_function** out);
HARDY_API hardy_status hardy_function_to_json(const hardy_function* fn, char** out);
HARDY_API hardy_status hardy_function_eval(const hardy_function* fn, double re, double im,
                                           double* out_re, double* out_im);
HARDY_API void hardy_function_free(hardy_function* fn);

HARDY_API hardy_status hardy_metric_ell(const hardy_solver* solver, double re, double im, double* ell);
/* grid: [[x, y], ...] or {"points": [...]}. csv != 0 selects CSV output. */
HARDY_API hardy_status hardy_metric_grid_json(const hardy_solver* solver, const char* grid, int csv,
                                              char** out);

/* Twisted Hilbert transform on the test subspace plus the operator blocks of
 * one boundary component. test_modes 0 picks the default subspace. */
HARDY_API hardy_status hardy_operators_json(const hardy_solver* solver, int component, int test_modes,
                                            char** out);

/* Runs the invariant suite. out_json and out_table may be null. */
HARDY_API hardy_status hardy_verify_json(const hardy_domain* domain, uint64_t seed, int modes,
                                         char** out_json, char** out_table, int* all_pass);

/* Closed-form annulus metric at |w| = radius on 1 < |w| < outer_radius. */
HARDY_API hardy_status hardy_annulus_reference(double radius, double outer_radius, int odd, int terms,
                                               double* value, double* tail_bound);

#ifdef __cplusplus
}
#endif

#endif
