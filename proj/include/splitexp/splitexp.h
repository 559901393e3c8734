/* splitexp: phi-functions, directional splittings and exponential
 * integrators for Kronecker-sum operators. Plain C interface.
 *
 * Every function returns an sxp_status; on failure a message is available
 * from sxp_last_error_message() on the calling thread. Handles are owned by
 * the caller and released with the matching *_destroy function. */
#ifndef SPLITEXP_SPLITEXP_H
#define SPLITEXP_SPLITEXP_H

#include <stddef.h>

#if defined(SPLITEXP_BUILDING_LIBRARY)
#define SXP_API __attribute__((visibility("default")))
#else
#define SXP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sxp_status {
    SXP_OK = 0,
    SXP_ERR_INVALID_ARGUMENT = 1,
    SXP_ERR_DIMENSION = 2,
    SXP_ERR_INVALID_SIZE = 3,
    SXP_ERR_INVALID_STEP = 4,
    SXP_ERR_UNSUPPORTED = 5,
    SXP_ERR_DIVERGENCE = 6,
    SXP_ERR_CONFIG = 7,
    SXP_ERR_IO = 8,
    SXP_ERR_NULL_HANDLE = 9,
    SXP_ERR_INTERNAL = 99
} sxp_status;

typedef enum sxp_split_kind {
    SXP_SPLIT_EXPHALF_PHI1 = 0,
    SXP_SPLIT_EXPHALF_EXPHALF = 1,
    SXP_SPLIT_PHI1_PHI1 = 2,
    SXP_SPLIT_PHIELL_PHIELL = 3,
    SXP_SPLIT_EXACT = 4
} sxp_split_kind;

typedef enum sxp_scheme { SXP_SCHEME_ERK2L = 0, SXP_SCHEME_ERK2 = 1, SXP_SCHEME_ETD2RK = 2 } sxp_scheme;

typedef enum sxp_study_kind { SXP_STUDY_LOCAL = 0, SXP_STUDY_GLOBAL = 1 } sxp_study_kind;

typedef enum sxp_test_function {
    SXP_FUNCTION_V1 = 0,
    SXP_FUNCTION_V2 = 1,
    SXP_FUNCTION_V3 = 2,
    SXP_FUNCTION_V4 = 3,
    SXP_FUNCTION_V5 = 4
} sxp_test_function;

typedef struct sxp_operator sxp_operator;
typedef struct sxp_field sxp_field;
typedef struct sxp_problem sxp_problem;
typedef struct sxp_report sxp_report;

typedef void (*sxp_log_fn)(const char* line, void* user);

SXP_API const char* sxp_last_error_message(void);
SXP_API const char* sxp_status_name(sxp_status status);
SXP_API const char* sxp_version(void);

/* Scalar phi_ell(z) and the ERK2 stability function R(a, b). */
SXP_API sxp_status sxp_phi_scalar(int ell, double z, double* out);
SXP_API sxp_status sxp_stability_function(double a, double b, double* out);

/* Dirichlet Laplacian Kronecker sum on (0, length)^dims, n points per mode. */
SXP_API sxp_status sxp_operator_create(size_t dims, size_t n, double length, sxp_operator** out);
SXP_API void sxp_operator_destroy(sxp_operator* op);

/* Fields are column-major (first index fastest). values may be NULL for zeros. */
SXP_API sxp_status sxp_field_create(size_t dims, const size_t* extents, const double* values, sxp_field** out);
SXP_API sxp_status sxp_field_test_function(sxp_test_function fn, size_t n, sxp_field** out);
SXP_API sxp_status sxp_field_dims(const sxp_field* f, size_t* dims);
SXP_API sxp_status sxp_field_extent(const sxp_field* f, size_t mode, size_t* extent);
SXP_API sxp_status sxp_field_size(const sxp_field* f, size_t* size);
/* Copies up to capacity values into buffer. */
SXP_API sxp_status sxp_field_values(const sxp_field* f, double* buffer, size_t capacity);
SXP_API sxp_status sxp_field_inf_norm(const sxp_field* f, double* out);
SXP_API void sxp_field_destroy(sxp_field* f);

/* tau * split approximation of phi_ell(tau (A_1 + ... + A_d)) applied to v. */
SXP_API sxp_status sxp_apply_split(sxp_split_kind kind, int ell, double tau, const sxp_operator* op,
                                   const sxp_field* v, sxp_field** out);
SXP_API sxp_status sxp_local_error(sxp_split_kind kind, int ell, double tau, const sxp_operator* op,
                                   const sxp_field* v, double* error);
SXP_API sxp_status sxp_strang_linear_step(double tau, const sxp_operator* op, const sxp_field* u0,
                                          const sxp_field* v, sxp_field** out);

/* u' = Laplace(u) + kappa q^p / (1 + u^2) on the unit square or cube. */
SXP_API sxp_status sxp_problem_create(size_t dims, int p, double kappa, size_t n, double final_time,
                                      sxp_problem** out);
SXP_API sxp_status sxp_problem_initial(const sxp_problem* problem, sxp_field** out);
SXP_API void sxp_problem_destroy(sxp_problem* problem);
SXP_API sxp_status sxp_integrate(const sxp_problem* problem, sxp_scheme scheme, size_t steps, sxp_field** out);

typedef struct sxp_study_config {
    sxp_study_kind study;
    size_t dim;
    size_t n;
    /* local */
    sxp_split_kind kind;
    int ell;
    sxp_test_function function;
    const double* taus;
    size_t tau_count;
    /* global */
    sxp_scheme scheme;
    int p;
    double kappa;
    double final_time;
    const size_t* steps;
    size_t step_count;
    size_t ref_steps;
} sxp_study_config;

/* Fills *config with defaults for the study kind and dimension. The tau and
 * step lists are left NULL, which selects the default lists. */
SXP_API sxp_status sxp_study_config_defaults(sxp_study_kind study, size_t dim, sxp_study_config* config);
SXP_API sxp_status sxp_run_study(const sxp_study_config* config, sxp_report** out);
SXP_API sxp_status sxp_report_sample_count(const sxp_report* report, size_t* count);
SXP_API sxp_status sxp_report_sample(const sxp_report* report, size_t index, double* tau, double* error,
                                     double* seconds);
/* *valid is 0 when fewer than two errors are non-zero. */
SXP_API sxp_status sxp_report_fitted_order(const sxp_report* report, double* order, int* valid);
/* Writes csv_path and the companion JSON report. */
SXP_API sxp_status sxp_report_write(const sxp_report* report, const char* csv_path);
SXP_API void sxp_report_destroy(sxp_report* report);

/* Name parsing for the CLI vocabulary (case-insensitive). ell receives the
 * phi order implied by the split name. */
SXP_API sxp_status sxp_parse_split_kind(const char* name, sxp_split_kind* kind, int* ell);
SXP_API sxp_status sxp_parse_scheme(const char* name, sxp_scheme* scheme);
SXP_API sxp_status sxp_parse_test_function(const char* name, sxp_test_function* fn);

/* Writes the series of figure 1..4 into out_dir. n = 0 selects the default
 * resolution. files_written may be NULL. */
SXP_API sxp_status sxp_reproduce_figure(int figure, const char* out_dir, size_t n, sxp_log_fn log, void* user,
                                        size_t* files_written);

/* Runs the invariant suite and the stored local-error comparisons; full
 * non-zero adds the global-error comparisons (several minutes). Each check
 * is reported through log. */
SXP_API sxp_status sxp_selftest(int full, sxp_log_fn log, void* user, size_t* failures);

#ifdef __cplusplus
}
#endif

#endif
