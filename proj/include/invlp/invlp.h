/*
 * invlp: imputing linear-program cost vectors from observed decisions.
 *
 * C interface. Objects are opaque handles created and released by the
 * library; every fallible call returns an invlp_status and, on failure,
 * leaves a message readable through invlp_last_error() on the same thread.
 * Matrices are passed row-major. Row and point indices are 0-based.
 */
#ifndef INVLP_INVLP_H
#define INVLP_INVLP_H

#include <stddef.h>
#include <stdint.h>

#if defined(INVLP_BUILDING_LIBRARY)
#define INVLP_API __attribute__((visibility("default")))
#else
#define INVLP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum invlp_status {
  INVLP_OK = 0,
  INVLP_ERR_INVALID_ARGUMENT,
  INVLP_ERR_VALIDATION,
  INVLP_ERR_ZERO_VECTOR,
  INVLP_ERR_EMPTY_FACE,
  INVLP_ERR_NUMERIC_FAILURE,
  INVLP_ERR_DEGENERATE_PAIR,
  INVLP_ERR_NO_FINITE_SOLUTION,
  INVLP_ERR_DIMENSION_TOO_LARGE,
  INVLP_ERR_B_IS_ZERO,
  INVLP_ERR_ALL_BRANCHES_INFEASIBLE,
  INVLP_ERR_INFEASIBLE_FORWARD,
  INVLP_ERR_STRUCTURE_NOT_NONNEG,
  INVLP_ERR_STRUCTURED_DEGENERATE,
  INVLP_ERR_BASELINE_UNDEFINED,
  INVLP_ERR_DEGENERATE_BASELINE,
  INVLP_ERR_IO,
  INVLP_ERR_FORMAT,
  INVLP_ERR_INTERNAL
} invlp_status;

typedef enum invlp_variant { INVLP_ADG = 0, INVLP_RDG = 1, INVLP_DSP = 2 } invlp_variant;

typedef enum invlp_norm { INVLP_NORM_L1 = 0, INVLP_NORM_L2 = 1, INVLP_NORM_LINF = 2 } invlp_norm;

typedef struct invlp_problem invlp_problem;
typedef struct invlp_fit invlp_fit;
typedef struct invlp_gof invlp_gof;

typedef struct invlp_options {
  invlp_variant variant;
  invlp_norm normalization; /* L1 or LINF */
  invlp_norm ds_p;          /* DSP only */
  int nonneg_cost;
  int structured;           /* use the cost matrix C: c = C'alpha */
  int skip_zero_rhs;        /* RDG rho: drop rows with b_i = 0 */
  const unsigned char* support_mask; /* n flags or NULL */
  size_t support_mask_len;
} invlp_options;

/* ADG, l1 normalization, p = 2, everything else off. */
INVLP_API void invlp_options_init(invlp_options* opts);

INVLP_API const char* invlp_last_error(void);
INVLP_API const char* invlp_status_name(invlp_status status);
/* 0 success, 2 invalid input, 3 solver failure, 4 file or format error. */
INVLP_API int invlp_exit_code(invlp_status status);
INVLP_API const char* invlp_version(void);

INVLP_API void invlp_string_free(char* s);

/* ---- problems ---------------------------------------------------------- */

INVLP_API invlp_status invlp_problem_create(size_t m, size_t n, const double* A, const double* b,
                                            invlp_problem** out);
INVLP_API invlp_status invlp_problem_load_json(const char* text, invlp_problem** out);
INVLP_API invlp_status invlp_problem_load_file(const char* path, invlp_problem** out);
INVLP_API void invlp_problem_free(invlp_problem* p);

/* q points of length dim; with are_objectives the rows are C x values. */
INVLP_API invlp_status invlp_problem_set_points(invlp_problem* p, size_t q, size_t dim, const double* points,
                                                int are_objectives);
/* k x n objective matrix. */
INVLP_API invlp_status invlp_problem_set_cost_structure(invlp_problem* p, size_t k, const double* C);
INVLP_API invlp_status invlp_problem_set_x_nonneg(invlp_problem* p, int flag);

INVLP_API size_t invlp_problem_rows(const invlp_problem* p);
INVLP_API size_t invlp_problem_cols(const invlp_problem* p);
INVLP_API size_t invlp_problem_num_points(const invlp_problem* p);

/* INVLP_ERR_VALIDATION with the first issue as the message when malformed. */
INVLP_API invlp_status invlp_problem_validate(const invlp_problem* p);
INVLP_API invlp_status invlp_problem_to_json(const invlp_problem* p, char** out);

/* ---- fitting ----------------------------------------------------------- */

INVLP_API invlp_status invlp_fit_run(const invlp_problem* p, const invlp_options* opts, invlp_fit** out);
INVLP_API void invlp_fit_free(invlp_fit* f);

INVLP_API double invlp_fit_z(const invlp_fit* f);
INVLP_API size_t invlp_fit_dim(const invlp_fit* f);        /* length of c */
INVLP_API size_t invlp_fit_dual_dim(const invlp_fit* f);   /* length of y */
INVLP_API size_t invlp_fit_num_points(const invlp_fit* f); /* length of eps */
INVLP_API size_t invlp_fit_alpha_dim(const invlp_fit* f);  /* 0 unless structured */
INVLP_API invlp_status invlp_fit_c(const invlp_fit* f, double* out, size_t len);
INVLP_API invlp_status invlp_fit_y(const invlp_fit* f, double* out, size_t len);
INVLP_API invlp_status invlp_fit_eps(const invlp_fit* f, double* out, size_t len);
INVLP_API invlp_status invlp_fit_alpha(const invlp_fit* f, double* out, size_t len);
INVLP_API const char* invlp_fit_path(const invlp_fit* f);
INVLP_API size_t invlp_fit_lp_calls(const invlp_fit* f);
INVLP_API invlp_status invlp_fit_to_json(const invlp_fit* f, char** out);

/* ---- goodness of fit --------------------------------------------------- */

INVLP_API invlp_status invlp_gof_run(const invlp_problem* p, const invlp_options* opts, invlp_gof** out);
INVLP_API void invlp_gof_free(invlp_gof* g);

INVLP_API double invlp_gof_rho(const invlp_gof* g);
INVLP_API double invlp_gof_rho_raw(const invlp_gof* g);
INVLP_API double invlp_gof_numerator(const invlp_gof* g);
INVLP_API double invlp_gof_denominator(const invlp_gof* g);
INVLP_API size_t invlp_gof_num_rows(const invlp_gof* g);
/* NaN marks excluded rows. */
INVLP_API invlp_status invlp_gof_baselines(const invlp_gof* g, double* out, size_t len);
INVLP_API invlp_status invlp_gof_to_json(const invlp_gof* g, char** out);

typedef struct invlp_grid {
  double lo1, hi1;
  double lo2, hi2;
  int n1, n2;
} invlp_grid;

/* rho over the grid with the problem's points held fixed and one point
 * added at each node; out has n1*n2 entries, gamma1 outermost, NaN for
 * failed cells. */
INVLP_API invlp_status invlp_sweep(const invlp_problem* p, const invlp_options* opts, const invlp_grid* grid,
                                   double* out);
INVLP_API invlp_status invlp_sweep_csv(const invlp_problem* p, const invlp_options* opts, const invlp_grid* grid,
                                       char** out);

typedef struct invlp_dominance {
  double z_adg, z_rdg, z_dsp;
  double f_adg, f_rdg;
  double by_adg, by_rdg;
  int data_feasible;
  int dsp_dominates; /* -1 when data is not all feasible */
  int upper_holds;
  int lower_holds;
  int upper_holds_dual;
  int lower_holds_dual;
} invlp_dominance;

INVLP_API invlp_status invlp_check_dominance(const invlp_problem* p, const invlp_options* opts,
                                             invlp_dominance* out);

/* ---- forward problem and data generation ------------------------------- */

/* min c'x over the problem's polyhedron; x_out has n entries (may be NULL). */
INVLP_API invlp_status invlp_forward(const invlp_problem* p, const double* c, size_t n, double* x_out,
                                     double* value_out);
/* Same with c = C'alpha and x >= 0. */
INVLP_API invlp_status invlp_forward_alpha(const invlp_problem* p, const double* alpha, size_t k, double* x_out,
                                           double* value_out);
/* Replaces the problem's points with q generated forward optima. */
INVLP_API invlp_status invlp_gen_ensemble(invlp_problem* p, const double* true_alpha, size_t k, size_t q,
                                          double noise, uint64_t seed);

/* ---- reference values -------------------------------------------------- */

/* Brute-force optimum for opts->variant (ADG/RDG sweep with `step` in
 * radians, DSP grid with `step` in length units; n = 2 for sweeps).
 * direction_out has n entries (may be NULL). */
INVLP_API invlp_status invlp_oracle(const invlp_problem* p, const invlp_options* opts, double step,
                                    double* value_out, double* bound_out, double* direction_out);

#ifdef __cplusplus
}
#endif

#endif /* INVLP_INVLP_H */
