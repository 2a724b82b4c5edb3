/*
 * C interface to the adaptive sparse-recovery solver.
 *
 * All functions return aadmm_status; on failure aadmm_last_error() holds a
 * human-readable message for the calling thread. Objects are created and
 * released through the matching _create/_destroy pairs and are otherwise
 * opaque.
 *
 * Matrices passed in or loaded from CSV get their columns normalized to
 * unit 2-norm internally; recovered signals are reported in the units of
 * the original columns.
 */

#ifndef AADMM_H
#define AADMM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AADMM_API __declspec(dllexport)
#else
#define AADMM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aadmm_status {
  AADMM_OK = 0,
  AADMM_ERR_INVALID_ARGUMENT = 1,
  AADMM_ERR_IO = 2,
  AADMM_ERR_NO_CONVERGENCE = 3
} aadmm_status;

AADMM_API const char *aadmm_version(void);

/* Message for the last failing call on this thread; never NULL. */
AADMM_API const char *aadmm_last_error(void);

typedef struct aadmm_problem aadmm_problem;
typedef struct aadmm_options aadmm_options;
typedef struct aadmm_report aadmm_report;

/* ---- solver options ---------------------------------------------------- */

/* Defaults: lambda 2e-4, sigma2 3.24e-4, kappa policy "rate", rho 1,
 * abs_tol 1e-8, rel_tol 1e-6, max_iter 2000, max_outer 4n, descent guard
 * on with stall_tol 1e-10, unconstrained mode. */
AADMM_API aadmm_options *aadmm_options_create(void);
AADMM_API void aadmm_options_destroy(aadmm_options *opts);

AADMM_API aadmm_status aadmm_options_set_lambda(aadmm_options *opts, double lambda);
AADMM_API aadmm_status aadmm_options_set_sigma2(aadmm_options *opts, double sigma2);
/* Uniform prior inclusion probability in (0,1). */
AADMM_API aadmm_status aadmm_options_set_kappa(aadmm_options *opts, double kappa);
/* Tie kappa to the expected sparsity rate k/n of the problem at hand. */
AADMM_API aadmm_status aadmm_options_set_kappa_rate(aadmm_options *opts);
AADMM_API aadmm_status aadmm_options_set_rho(aadmm_options *opts, double rho);
AADMM_API aadmm_status aadmm_options_set_tolerances(aadmm_options *opts,
                                                    double abs_tol,
                                                    double rel_tol);
AADMM_API aadmm_status aadmm_options_set_max_iter(aadmm_options *opts, int max_iter);
/* 0 restores the default cap of 4n. */
AADMM_API aadmm_status aadmm_options_set_max_outer(aadmm_options *opts, int max_outer);
AADMM_API aadmm_status aadmm_options_set_nonneg(aadmm_options *opts, int nonneg);
AADMM_API aadmm_status aadmm_options_set_descent_guard(aadmm_options *opts, int on,
                                                       double stall_tol);

/* ---- problems ----------------------------------------------------------- */

/* a is m x n in row-major order; y has length m. */
AADMM_API aadmm_status aadmm_problem_create(const double *a, size_t m, size_t n,
                                            const double *y,
                                            aadmm_problem **out);

/* CSV files as written by the gen driver; x_true_path may be NULL. */
AADMM_API aadmm_status aadmm_problem_load_csv(const char *a_path,
                                              const char *y_path,
                                              const char *x_true_path,
                                              aadmm_problem **out);

AADMM_API aadmm_status aadmm_problem_set_truth(aadmm_problem *p,
                                               const double *x_true, size_t n);

AADMM_API size_t aadmm_problem_rows(const aadmm_problem *p);
AADMM_API size_t aadmm_problem_cols(const aadmm_problem *p);
AADMM_API void aadmm_problem_destroy(aadmm_problem *p);

/* ---- solving ------------------------------------------------------------ */

AADMM_API aadmm_status aadmm_solve(const aadmm_problem *p,
                                   const aadmm_options *opts,
                                   aadmm_report **out);

/* L1-regularized fit over all indices, no support search. */
AADMM_API aadmm_status aadmm_lasso_baseline(const aadmm_problem *p,
                                            const aadmm_options *opts,
                                            aadmm_report **out);

AADMM_API size_t aadmm_report_signal_length(const aadmm_report *r);
AADMM_API aadmm_status aadmm_report_signal(const aadmm_report *r, double *buf,
                                           size_t len);
AADMM_API size_t aadmm_report_support_size(const aadmm_report *r);
AADMM_API aadmm_status aadmm_report_support(const aadmm_report *r, int64_t *buf,
                                            size_t len);
AADMM_API double aadmm_report_objective(const aadmm_report *r);
AADMM_API int64_t aadmm_report_sparsity(const aadmm_report *r);
AADMM_API int aadmm_report_outer_iterations(const aadmm_report *r);
AADMM_API int aadmm_report_inner_warning(const aadmm_report *r);
AADMM_API const char *aadmm_report_stop_reason(const aadmm_report *r);
/* -1 when the problem carried no ground truth. */
AADMM_API double aadmm_report_mse(const aadmm_report *r);
AADMM_API double aadmm_report_sml(const aadmm_report *r);
AADMM_API void aadmm_report_destroy(aadmm_report *r);

/* ---- synthetic data and experiment drivers ------------------------------ */

typedef struct aadmm_synth_params {
  uint64_t n, m, k;
  double sigma2;
  double lambda;
  double laplace_scale; /* <= 0 resolves to 2*sigma2/lambda */
  int nonneg;
  uint64_t seed;
} aadmm_synth_params;

/* n=512, m=128, k=30, sigma2=3.24e-4, lambda=2e-4, auto scale, seed 0. */
AADMM_API void aadmm_synth_params_init(aadmm_synth_params *params);

AADMM_API aadmm_status aadmm_problem_generate(const aadmm_synth_params *params,
                                              aadmm_problem **out);

/* Writes A.csv, x.csv, y.csv, config.json. */
AADMM_API aadmm_status aadmm_gen(const aadmm_synth_params *params,
                                 const char *out_dir);

/* Reads the three CSV files (x optional), solves, and writes x_hat.csv,
 * support.csv, report.json, config.json. `out` may be NULL. */
AADMM_API aadmm_status aadmm_solve_files(const char *a_path, const char *y_path,
                                         const char *x_true_path,
                                         const aadmm_options *opts,
                                         const char *out_dir,
                                         aadmm_report **out);

/* Writes results.csv, aggregate.json, hist.csv, config.json. The
 * benchmark family (bench/sweep/trace) generates and solves in
 * non-negative mode iff params->nonneg is set. */
AADMM_API aadmm_status aadmm_bench(const aadmm_synth_params *params,
                                   const aadmm_options *opts, uint64_t trials,
                                   int workers, const char *out_dir);

typedef enum aadmm_sweep_axis {
  AADMM_SWEEP_SPARSITY = 0,
  AADMM_SWEEP_NOISE = 1,
  AADMM_SWEEP_LAMBDA = 2
} aadmm_sweep_axis;

/* Writes sweep.csv, config.json. */
AADMM_API aadmm_status aadmm_sweep(const aadmm_synth_params *params,
                                   const aadmm_options *opts,
                                   aadmm_sweep_axis axis, const double *values,
                                   size_t num_values, uint64_t trials,
                                   int workers, const char *out_dir);

/* Writes trace.csv, config.json. */
AADMM_API aadmm_status aadmm_trace(const aadmm_synth_params *params,
                                   const aadmm_options *opts,
                                   const char *out_dir);

/* IDX image/label files; non-negative mode throughout, with kappa tied
 * to each digit's own sparsity rate. Writes per-digit PGM images plus
 * results.csv, aggregate.json, config.json. */
AADMM_API aadmm_status aadmm_mnist(const char *images_path,
                                   const char *labels_path, int gunzip,
                                   uint64_t m, uint64_t seed,
                                   const aadmm_options *opts,
                                   const char *out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AADMM_H */
