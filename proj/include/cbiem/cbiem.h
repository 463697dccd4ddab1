/* C interface to the cbiem library. All handles are opaque; every call that
 * can fail returns a cbiem_status and leaves a message for cbiem_last_error. */
#ifndef CBIEM_CBIEM_H
#define CBIEM_CBIEM_H

#include <stddef.h>

#if defined(_WIN32)
#define CBIEM_API __declspec(dllexport)
#else
#define CBIEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  CBIEM_OK = 0,
  CBIEM_INVALID_ARGUMENT = 1,
  CBIEM_NUMERICAL_FAILURE = 2,
  CBIEM_GEOMETRY_DEGENERATE = 3,
  CBIEM_LOCATION_DEGENERATE = 4,
  CBIEM_INTERNAL_ERROR = 5
} cbiem_status;

typedef enum {
  CBIEM_CONTOUR_CIRCLE = 0,
  CBIEM_CONTOUR_TEARDROP = 1,
  CBIEM_CONTOUR_CARDIOID = 2,
  CBIEM_CONTOUR_WIDE_TEARDROP = 3
} cbiem_contour_kind;

typedef enum {
  CBIEM_NORM_WEIGHTED2 = 0,
  CBIEM_NORM_UNWEIGHTED2 = 1,
  CBIEM_NORM_INF = 2
} cbiem_norm;

typedef enum {
  CBIEM_ROW_OK = 0,
  CBIEM_ROW_DIVERGED = 1,
  CBIEM_ROW_TRUNCATED = 2,
  CBIEM_ROW_INVALID = 3
} cbiem_row_status;

typedef struct cbiem_contour cbiem_contour;
typedef struct cbiem_solution cbiem_solution;
typedef struct cbiem_study cbiem_study;

/* Message of the last failed call on this thread ("" if none). */
CBIEM_API const char* cbiem_last_error(void);
CBIEM_API const char* cbiem_version(void);

/* ---- quadrature ---- */

/* n-point Gauss-Lobatto rule on [a, b]; nodes and weights hold n entries. */
CBIEM_API cbiem_status cbiem_gauss_lobatto(int n, double a, double b,
                                           double* nodes, double* weights);
/* Closed Newton-Cotes rule on [0, 1], 2 <= n <= 11. */
CBIEM_API cbiem_status cbiem_newton_cotes(int n, double* nodes, double* weights);
CBIEM_API cbiem_status cbiem_error_constant(int p, double* out);
/* Runs the quadrature self test. The report stays valid until the next call
 * on this thread. */
CBIEM_API cbiem_status cbiem_quad_selftest(const char** report, int* failures);

/* ---- contours ---- */

typedef struct {
  int reference_orientation; /* teardrop family: conjugate parameterisation */
  int circle_corners;        /* artificial corners on the unit circle */
  double wide_angle_deg;     /* wide teardrop corner angle */
} cbiem_contour_options;

CBIEM_API void cbiem_contour_options_init(cbiem_contour_options* options);
CBIEM_API cbiem_status cbiem_contour_create(cbiem_contour_kind kind,
                                            const cbiem_contour_options* options,
                                            cbiem_contour** out);
CBIEM_API void cbiem_contour_destroy(cbiem_contour* contour);
CBIEM_API cbiem_status cbiem_contour_point(const cbiem_contour* contour, double t,
                                           double* re, double* im);
CBIEM_API cbiem_status cbiem_contour_info(const cbiem_contour* contour,
                                          int* corner_count, int* winding);

/* ---- boundary solve ---- */

typedef struct {
  int depth;        /* grading depth D */
  double sigma;     /* grading ratio */
  int order;        /* interpolation order O (even) */
  int split_imag;   /* nonzero: solve Im(C) V = Re(d) */
  int has_normalization;
  double normalization; /* V at the last node when has_normalization */
  const int* graded_orders; /* experimental; NULL to use `order` */
  int graded_count;
  double condition_warning;
} cbiem_solve_options;

typedef double (*cbiem_boundary_fn)(double t, double re, double im, void* user);

CBIEM_API void cbiem_solve_options_init(cbiem_solve_options* options);
/* Test problem W = z^alpha; exact V is known, so errors are available. */
CBIEM_API cbiem_status cbiem_solve_power(const cbiem_contour* contour,
                                         const cbiem_solve_options* options,
                                         double alpha, cbiem_solution** out);
CBIEM_API cbiem_status cbiem_solve_constant(const cbiem_contour* contour,
                                            const cbiem_solve_options* options,
                                            double value, cbiem_solution** out);
/* General data U(t, gamma(t)). */
CBIEM_API cbiem_status cbiem_solve_function(const cbiem_contour* contour,
                                            const cbiem_solve_options* options,
                                            cbiem_boundary_fn u, void* user,
                                            cbiem_solution** out);
CBIEM_API void cbiem_solution_destroy(cbiem_solution* solution);

CBIEM_API cbiem_status cbiem_solution_size(const cbiem_solution* s, int* n);
/* Copies n entries each. Any output pointer may be NULL. */
CBIEM_API cbiem_status cbiem_solution_nodes(const cbiem_solution* s, double* t,
                                            double* re, double* im);
CBIEM_API cbiem_status cbiem_solution_values(const cbiem_solution* s, double* u,
                                             double* v_hat, double* v_exact);
CBIEM_API cbiem_status cbiem_solution_error(const cbiem_solution* s, cbiem_norm norm,
                                            double* out);
CBIEM_API cbiem_status cbiem_solution_condition(const cbiem_solution* s,
                                                double* condition,
                                                int* ill_conditioned);
/* Interior value of W; `subtracted` selects the singularity-subtracted form. */
CBIEM_API cbiem_status cbiem_solution_eval(const cbiem_solution* s, double re,
                                           double im, int subtracted,
                                           double* out_re, double* out_im);

/* ---- studies ---- */

typedef struct {
  cbiem_contour_kind contour;
  cbiem_contour_options contour_options;
  double alpha;
  double sigma;
  int d_min, d_max;
  int o_min, o_max;
  cbiem_norm norm;
  unsigned threads; /* 0: hardware concurrency */
} cbiem_table_spec;

CBIEM_API void cbiem_table_spec_init(cbiem_table_spec* spec);

CBIEM_API cbiem_status cbiem_study_h(const double* gammas, int count, int points,
                                     int d_max, cbiem_study** out);
CBIEM_API cbiem_status cbiem_study_hp(double sigma, int d_max, cbiem_study** out);
CBIEM_API cbiem_status cbiem_study_contour(double sigma, int d_min, int d_max,
                                           cbiem_study** out);
CBIEM_API cbiem_status cbiem_study_table(const cbiem_table_spec* spec,
                                         cbiem_study** out);
CBIEM_API void cbiem_study_destroy(cbiem_study* study);

CBIEM_API cbiem_status cbiem_study_row_count(const cbiem_study* s, int* count);
/* params receives up to max_params values; *param_count gets the full count. */
CBIEM_API cbiem_status cbiem_study_row(const cbiem_study* s, int row, int* n,
                                       double* error, cbiem_row_status* status,
                                       double* params, int max_params,
                                       int* param_count);
CBIEM_API cbiem_status cbiem_study_fit_count(const cbiem_study* s, int* count);
CBIEM_API cbiem_status cbiem_study_fit(const cbiem_study* s, int fit,
                                       double* tail_slope, double* tail_r2,
                                       double* all_slope, double* all_r2,
                                       double* predicted_slope);
/* Text views owned by the study handle. */
CBIEM_API cbiem_status cbiem_study_csv(const cbiem_study* s, const char** text);
CBIEM_API cbiem_status cbiem_study_svg(const cbiem_study* s, const char** text);
CBIEM_API cbiem_status cbiem_study_fits_text(const cbiem_study* s, const char** text);
CBIEM_API cbiem_status cbiem_study_metadata_text(const cbiem_study* s, const char** text);

#ifdef __cplusplus
}
#endif

#endif /* CBIEM_CBIEM_H */
