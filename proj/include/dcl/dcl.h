#ifndef DCL_DCL_H
#define DCL_DCL_H

/* C interface to the dcl library. All strings are UTF-8, NUL terminated.
 * Strings returned through char** are owned by the caller and released with dcl_string_free.
 * On failure the message is available from dcl_last_error() on the same thread. */

#include <stddef.h>

#if defined(DCL_BUILDING_LIBRARY)
#define DCL_API __attribute__((visibility("default")))
#else
#define DCL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dcl_body dcl_body;

typedef enum dcl_status {
    DCL_OK = 0,
    DCL_VIOLATION = 1,       /* an inequality was violated inside its admissible range */
    DCL_ERR_PARSE = 2,       /* malformed body, samples or config */
    DCL_ERR_POSITIVITY = 3,  /* radial function not strictly positive */
    DCL_ERR_HYPOTHESIS = 4,  /* harmonics at n/k even present where the theorem forbids them */
    DCL_ERR_IO = 5,
    DCL_ERR_ARGUMENT = 6,    /* bad parameter value or range */
    DCL_ERR_INTERNAL = 7
} dcl_status;

DCL_API const char* dcl_version(void);
DCL_API const char* dcl_last_error(void);
DCL_API const char* dcl_status_name(dcl_status status);

/* Bodies are validated for positivity on construction. */
DCL_API dcl_status dcl_body_from_json(const char* text, dcl_body** out);
DCL_API dcl_status dcl_body_load(const char* path, dcl_body** out);
/* a[i], b[i] are the coefficients of cos((i+1) theta), sin((i+1) theta). */
DCL_API dcl_status dcl_body_from_coefficients(double a0, const double* a, const double* b, size_t count,
                                              dcl_body** out);
DCL_API void dcl_body_free(dcl_body* body);
DCL_API dcl_status dcl_body_to_json(const dcl_body* body, char** out);
DCL_API void dcl_string_free(char* s);

DCL_API int dcl_body_max_order(const dcl_body* body);
DCL_API double dcl_body_min_radial(const dcl_body* body);
DCL_API dcl_status dcl_eval_radial(const dcl_body* body, double theta, double* out);

/* name: area, oriented_area, dual_mixed_area_disk, dual_l2_distance, chord_self_integral,
 * chord_mixed_integral. t is needed by the two-body functionals, k by the chord ones, alpha
 * by chord_mixed_integral. nodes <= 0 selects the default rule. */
DCL_API dcl_status dcl_functional(const dcl_body* s, const dcl_body* t, const char* name, int k, double alpha,
                                  int nodes, double* closed, double* quadrature);

typedef struct dcl_verify_options {
    const char* inequality; /* T1, T2, T3, C31, stab35, stab37, dual_iso, mixed_iso */
    int has_k;
    int k;
    int has_lambda;
    double lambda;
    int has_mu;
    double mu;
    int has_alpha;
    double alpha;
    int nodes; /* <= 0: default */
    double tol; /* relative tolerance scale, default 1e-9 */
    int allow_out_of_range;
    int project;
    int cross_check;
} dcl_verify_options;

DCL_API void dcl_verify_options_init(dcl_verify_options* opts);

/* Writes the report as JSON into *report. Returns DCL_OK for holds/equality (and for violations
 * outside the admissible range when allowed), DCL_VIOLATION otherwise. */
DCL_API dcl_status dcl_verify(const dcl_body* s, const dcl_body* t, const dcl_verify_options* opts, char** report);

/* Config-driven runs writing artifacts into out_dir. Sweep and report return DCL_VIOLATION
 * when any in-range violation was found. */
DCL_API dcl_status dcl_run_sweep(const char* config_path, const char* out_dir);
DCL_API dcl_status dcl_run_search(const char* config_path, const char* out_dir);
DCL_API dcl_status dcl_run_limit(const char* config_path, const char* out_dir);
DCL_API dcl_status dcl_run_report(const char* config_path, const char* out_dir);

/* samples: {"samples": [[theta, r], ...]} or a bare array. Writes the fitted body JSON. */
DCL_API dcl_status dcl_fit_profile_json(const char* samples, int max_order, char** body);

#ifdef __cplusplus
}
#endif

#endif
