#include "aadmm/aadmm.h"

#include <cstring>
#include <exception>
#include <optional>
#include <string>

#include "core/experiments.hpp"
#include "core/io.hpp"

namespace {

thread_local std::string g_last_error;

aadmm_status fail(aadmm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

aadmm_status from_exception() {
  try {
    throw;
  } catch (const aadmm::IoError& e) {
    return fail(AADMM_ERR_IO, e.what());
  } catch (const aadmm::IdxError& e) {
    return fail(AADMM_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(AADMM_ERR_INVALID_ARGUMENT, e.what());
  } catch (...) {
    return fail(AADMM_ERR_INVALID_ARGUMENT, "unknown error");
  }
}

}  // namespace

struct aadmm_problem {
  aadmm::MeasurementEnsemble ensemble;  // normalized columns
  Eigen::VectorXd scales;               // original column norms
  std::optional<Eigen::VectorXd> truth;
};

struct aadmm_options {
  double lambda = 2e-4;
  double sigma2 = 3.24e-4;
  aadmm::KappaPolicy kappa;  // defaults to the rate policy
  aadmm::OuterOptions outer;
};

struct aadmm_report {
  aadmm::SignalEstimate estimate;  // x in original column units
  aadmm::StopReason stop_reason = aadmm::StopReason::bounds_nonneg;
  int outer_iterations = 0;
  bool inner_warning = false;
  double mse = -1.0;
  double sml = -1.0;
};

extern "C" {

const char* aadmm_version(void) { return "0.1.0"; }

const char* aadmm_last_error(void) { return g_last_error.c_str(); }

/* ---- options ------------------------------------------------------------ */

aadmm_options* aadmm_options_create(void) { return new aadmm_options(); }

void aadmm_options_destroy(aadmm_options* opts) { delete opts; }

#define AADMM_REQUIRE(cond, msg)                        \
  do {                                                  \
    if (!(cond)) return fail(AADMM_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

aadmm_status aadmm_options_set_lambda(aadmm_options* opts, double lambda) {
  AADMM_REQUIRE(opts, "opts is NULL");
  AADMM_REQUIRE(lambda > 0, "lambda must be positive");
  opts->lambda = lambda;
  return AADMM_OK;
}

aadmm_status aadmm_options_set_sigma2(aadmm_options* opts, double sigma2) {
  AADMM_REQUIRE(opts, "opts is NULL");
  AADMM_REQUIRE(sigma2 > 0, "sigma2 must be positive");
  opts->sigma2 = sigma2;
  return AADMM_OK;
}

aadmm_status aadmm_options_set_kappa(aadmm_options* opts, double kappa) {
  AADMM_REQUIRE(opts, "opts is NULL");
  AADMM_REQUIRE(kappa > 0 && kappa < 1, "kappa must lie strictly inside (0,1)");
  opts->kappa = {aadmm::KappaPolicy::Kind::uniform_value, kappa};
  return AADMM_OK;
}

aadmm_status aadmm_options_set_kappa_rate(aadmm_options* opts) {
  AADMM_REQUIRE(opts, "opts is NULL");
  opts->kappa = {aadmm::KappaPolicy::Kind::oracle_rate, 0.0};
  return AADMM_OK;
}

aadmm_status aadmm_options_set_rho(aadmm_options* opts, double rho) {
  AADMM_REQUIRE(opts, "opts is NULL");
  AADMM_REQUIRE(rho > 0, "rho must be positive");
  opts->outer.admm.rho = rho;
  return AADMM_OK;
}

aadmm_status aadmm_options_set_tolerances(aadmm_options* opts, double abs_tol,
                                          double rel_tol) {
  AADMM_REQUIRE(opts, "opts is NULL");
  AADMM_REQUIRE(abs_tol > 0 && rel_tol > 0, "tolerances must be positive");
  opts->outer.admm.abs_tol = abs_tol;
  opts->outer.admm.rel_tol = rel_tol;
  return AADMM_OK;
}

aadmm_status aadmm_options_set_max_iter(aadmm_options* opts, int max_iter) {
  AADMM_REQUIRE(opts, "opts is NULL");
  AADMM_REQUIRE(max_iter >= 1, "max_iter must be at least 1");
  opts->outer.admm.max_iter = max_iter;
  return AADMM_OK;
}

aadmm_status aadmm_options_set_max_outer(aadmm_options* opts, int max_outer) {
  AADMM_REQUIRE(opts, "opts is NULL");
  AADMM_REQUIRE(max_outer >= 0, "max_outer must be nonnegative");
  opts->outer.max_outer = max_outer;
  return AADMM_OK;
}

aadmm_status aadmm_options_set_nonneg(aadmm_options* opts, int nonneg) {
  AADMM_REQUIRE(opts, "opts is NULL");
  opts->outer.admm.nonneg = nonneg != 0;
  return AADMM_OK;
}

aadmm_status aadmm_options_set_descent_guard(aadmm_options* opts, int on,
                                             double stall_tol) {
  AADMM_REQUIRE(opts, "opts is NULL");
  AADMM_REQUIRE(stall_tol >= 0, "stall_tol must be nonnegative");
  opts->outer.descent_guard = on != 0;
  opts->outer.stall_tol = stall_tol;
  return AADMM_OK;
}

/* ---- problems ------------------------------------------------------------ */

aadmm_status aadmm_problem_create(const double* a, size_t m, size_t n,
                                  const double* y, aadmm_problem** out) {
  AADMM_REQUIRE(a && y && out, "a, y, and out must be non-NULL");
  AADMM_REQUIRE(m >= 1 && n >= 1, "dimensions must be positive");
  try {
    Eigen::MatrixXd raw(m, n);
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c < n; ++c) raw(r, c) = a[r * n + c];
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y, m);

    auto p = std::make_unique<aadmm_problem>();
    const aadmm::ColumnScaling scaling = aadmm::normalize_columns(raw);
    p->ensemble.A = scaling.a;
    p->ensemble.y = std::move(yv);
    p->scales = scaling.scales;
    *out = p.release();
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

aadmm_status aadmm_problem_load_csv(const char* a_path, const char* y_path,
                                    const char* x_true_path,
                                    aadmm_problem** out) {
  AADMM_REQUIRE(a_path && y_path && out, "a_path, y_path, and out must be non-NULL");
  try {
    const Eigen::MatrixXd raw = aadmm::read_matrix_csv(a_path);
    const Eigen::VectorXd y = aadmm::read_vector_csv(y_path);
    if (y.size() != raw.rows())
      return fail(AADMM_ERR_IO, "y length does not match the rows of A");

    auto p = std::make_unique<aadmm_problem>();
    const aadmm::ColumnScaling scaling = aadmm::normalize_columns(raw);
    p->ensemble.A = scaling.a;
    p->ensemble.y = y;
    p->scales = scaling.scales;
    if (x_true_path) {
      const Eigen::VectorXd x = aadmm::read_vector_csv(x_true_path);
      if (x.size() != raw.cols())
        return fail(AADMM_ERR_IO, "x length does not match the columns of A");
      p->truth = x;
    }
    *out = p.release();
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

aadmm_status aadmm_problem_set_truth(aadmm_problem* p, const double* x_true,
                                     size_t n) {
  AADMM_REQUIRE(p && x_true, "p and x_true must be non-NULL");
  AADMM_REQUIRE(static_cast<Eigen::Index>(n) == p->ensemble.cols(),
                "truth length differs from the signal length");
  p->truth = Eigen::Map<const Eigen::VectorXd>(x_true, n);
  return AADMM_OK;
}

size_t aadmm_problem_rows(const aadmm_problem* p) {
  return p ? static_cast<size_t>(p->ensemble.rows()) : 0;
}

size_t aadmm_problem_cols(const aadmm_problem* p) {
  return p ? static_cast<size_t>(p->ensemble.cols()) : 0;
}

void aadmm_problem_destroy(aadmm_problem* p) { delete p; }

/* ---- solving ------------------------------------------------------------- */

namespace {

aadmm::HyperParams hyperparams_for_problem(const aadmm_problem& p,
                                           const aadmm_options& opts) {
  double kappa = opts.kappa.value;
  if (opts.kappa.kind == aadmm::KappaPolicy::Kind::oracle_rate) {
    if (!p.truth)
      throw std::invalid_argument(
          "kappa policy 'rate' needs ground truth to estimate the sparsity");
    kappa = std::clamp(static_cast<double>(aadmm::sparsity_level(*p.truth)) /
                           static_cast<double>(p.ensemble.cols()),
                       1e-6, 1.0 - 1e-6);
  }
  return aadmm::HyperParams::uniform(opts.lambda, opts.sigma2, kappa,
                                     p.ensemble.cols());
}

void fill_metrics(aadmm_report& report, const aadmm_problem& p) {
  if (!p.truth) return;
  report.mse = aadmm::mse(report.estimate.x, *p.truth);
  report.sml = aadmm::sml(report.estimate.support, aadmm::support_of(*p.truth),
                          p.ensemble.cols());
}

}  // namespace

aadmm_status aadmm_solve(const aadmm_problem* p, const aadmm_options* opts,
                         aadmm_report** out) {
  AADMM_REQUIRE(p && opts && out, "p, opts, and out must be non-NULL");
  try {
    const aadmm::HyperParams hp = hyperparams_for_problem(*p, *opts);
    const aadmm::RecoveryReport rec = aadmm::run(p->ensemble, hp, opts->outer);

    auto report = std::make_unique<aadmm_report>();
    report->estimate = rec.estimate;
    for (Eigen::Index i = 0; i < report->estimate.x.size(); ++i)
      report->estimate.x[i] /= p->scales[i];
    report->stop_reason = rec.stop_reason;
    report->outer_iterations = rec.outer_iterations;
    report->inner_warning = rec.inner_warning;
    fill_metrics(*report, *p);
    *out = report.release();
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

aadmm_status aadmm_lasso_baseline(const aadmm_problem* p,
                                  const aadmm_options* opts,
                                  aadmm_report** out) {
  AADMM_REQUIRE(p && opts && out, "p, opts, and out must be non-NULL");
  try {
    aadmm::HyperParams hp = aadmm::HyperParams::uniform(
        opts->lambda, opts->sigma2, 0.5, p->ensemble.cols());
    const aadmm::BaselineResult base =
        aadmm::baseline_lasso(p->ensemble, hp, opts->outer);

    auto report = std::make_unique<aadmm_report>();
    report->estimate = base.estimate;
    for (Eigen::Index i = 0; i < report->estimate.x.size(); ++i)
      report->estimate.x[i] /= p->scales[i];
    report->inner_warning = !base.converged;
    report->outer_iterations = 0;
    fill_metrics(*report, *p);
    *out = report.release();
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

size_t aadmm_report_signal_length(const aadmm_report* r) {
  return r ? static_cast<size_t>(r->estimate.x.size()) : 0;
}

aadmm_status aadmm_report_signal(const aadmm_report* r, double* buf,
                                 size_t len) {
  AADMM_REQUIRE(r && buf, "r and buf must be non-NULL");
  AADMM_REQUIRE(len >= static_cast<size_t>(r->estimate.x.size()),
                "buffer too small for the signal");
  std::memcpy(buf, r->estimate.x.data(), r->estimate.x.size() * sizeof(double));
  return AADMM_OK;
}

size_t aadmm_report_support_size(const aadmm_report* r) {
  return r ? r->estimate.support.size() : 0;
}

aadmm_status aadmm_report_support(const aadmm_report* r, int64_t* buf,
                                  size_t len) {
  AADMM_REQUIRE(r && buf, "r and buf must be non-NULL");
  AADMM_REQUIRE(len >= r->estimate.support.size(),
                "buffer too small for the support");
  for (size_t i = 0; i < r->estimate.support.size(); ++i)
    buf[i] = static_cast<int64_t>(r->estimate.support[i]);
  return AADMM_OK;
}

double aadmm_report_objective(const aadmm_report* r) {
  return r ? r->estimate.objective : 0.0;
}

int64_t aadmm_report_sparsity(const aadmm_report* r) {
  return r ? static_cast<int64_t>(aadmm::sparsity_level(r->estimate.x)) : 0;
}

int aadmm_report_outer_iterations(const aadmm_report* r) {
  return r ? r->outer_iterations : 0;
}

int aadmm_report_inner_warning(const aadmm_report* r) {
  return r && r->inner_warning ? 1 : 0;
}

const char* aadmm_report_stop_reason(const aadmm_report* r) {
  return r ? aadmm::to_string(r->stop_reason) : "?";
}

double aadmm_report_mse(const aadmm_report* r) { return r ? r->mse : -1.0; }

double aadmm_report_sml(const aadmm_report* r) { return r ? r->sml : -1.0; }

void aadmm_report_destroy(aadmm_report* r) { delete r; }

/* ---- synthetic data and experiment drivers -------------------------------- */

namespace {

aadmm::SynthConfig to_synth(const aadmm_synth_params& params) {
  aadmm::SynthConfig cfg;
  cfg.n = static_cast<Eigen::Index>(params.n);
  cfg.m = static_cast<Eigen::Index>(params.m);
  cfg.k = static_cast<Eigen::Index>(params.k);
  cfg.sigma2 = params.sigma2;
  cfg.lambda = params.lambda;
  cfg.laplace_scale = params.laplace_scale;
  cfg.nonneg = params.nonneg != 0;
  cfg.seed = params.seed;
  return cfg;
}

aadmm::BenchmarkConfig to_bench(const aadmm_synth_params& params,
                                const aadmm_options& opts, uint64_t trials,
                                int workers) {
  aadmm::BenchmarkConfig cfg;
  cfg.synth = to_synth(params);
  cfg.trials = static_cast<int>(trials);
  cfg.kappa = opts.kappa;
  cfg.opts = opts.outer;
  cfg.workers = workers;
  return cfg;
}

}  // namespace

void aadmm_synth_params_init(aadmm_synth_params* params) {
  if (!params) return;
  params->n = 512;
  params->m = 128;
  params->k = 30;
  params->sigma2 = 3.24e-4;
  params->lambda = 2e-4;
  params->laplace_scale = 0.0;
  params->nonneg = 0;
  params->seed = 0;
}

aadmm_status aadmm_problem_generate(const aadmm_synth_params* params,
                                    aadmm_problem** out) {
  AADMM_REQUIRE(params && out, "params and out must be non-NULL");
  try {
    const aadmm::SynthProblem gen = aadmm::gen_problem(to_synth(*params));
    auto p = std::make_unique<aadmm_problem>();
    p->ensemble = gen.ensemble;
    p->scales = Eigen::VectorXd::Ones(gen.ensemble.cols());
    p->truth = gen.x_true;
    *out = p.release();
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

aadmm_status aadmm_gen(const aadmm_synth_params* params, const char* out_dir) {
  AADMM_REQUIRE(params && out_dir, "params and out_dir must be non-NULL");
  try {
    aadmm::gen_to_dir(to_synth(*params), out_dir);
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

aadmm_status aadmm_solve_files(const char* a_path, const char* y_path,
                               const char* x_true_path,
                               const aadmm_options* opts, const char* out_dir,
                               aadmm_report** out) {
  AADMM_REQUIRE(a_path && y_path && opts && out_dir,
                "a_path, y_path, opts, and out_dir must be non-NULL");
  try {
    aadmm::SolveRequest req;
    req.a_path = a_path;
    req.y_path = y_path;
    if (x_true_path) req.x_true_path = x_true_path;
    req.lambda = opts->lambda;
    req.sigma2 = opts->sigma2;
    req.kappa = opts->kappa;
    req.opts = opts->outer;
    const aadmm::SolveOutcome outcome = aadmm::solve_to_dir(req, out_dir);
    if (out) {
      auto report = std::make_unique<aadmm_report>();
      report->estimate = outcome.report.estimate;
      report->estimate.x = outcome.x_hat;
      report->stop_reason = outcome.report.stop_reason;
      report->outer_iterations = outcome.report.outer_iterations;
      report->inner_warning = outcome.report.inner_warning;
      if (outcome.have_truth) {
        report->mse = outcome.trial.mse;
        report->sml = outcome.trial.sml;
      }
      *out = report.release();
    }
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

aadmm_status aadmm_bench(const aadmm_synth_params* params,
                         const aadmm_options* opts, uint64_t trials,
                         int workers, const char* out_dir) {
  AADMM_REQUIRE(params && opts && out_dir,
                "params, opts, and out_dir must be non-NULL");
  AADMM_REQUIRE(trials >= 1, "trials must be at least 1");
  try {
    aadmm::bench_to_dir(to_bench(*params, *opts, trials, workers), out_dir);
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

aadmm_status aadmm_sweep(const aadmm_synth_params* params,
                         const aadmm_options* opts, aadmm_sweep_axis axis,
                         const double* values, size_t num_values,
                         uint64_t trials, int workers, const char* out_dir) {
  AADMM_REQUIRE(params && opts && values && out_dir,
                "params, opts, values, and out_dir must be non-NULL");
  AADMM_REQUIRE(num_values >= 1, "sweep needs at least one axis value");
  try {
    aadmm::SweepAxis ax;
    switch (axis) {
      case AADMM_SWEEP_SPARSITY: ax = aadmm::SweepAxis::sparsity; break;
      case AADMM_SWEEP_NOISE: ax = aadmm::SweepAxis::noise; break;
      case AADMM_SWEEP_LAMBDA: ax = aadmm::SweepAxis::lambda; break;
      default: return fail(AADMM_ERR_INVALID_ARGUMENT, "unknown sweep axis");
    }
    aadmm::sweep_to_dir(to_bench(*params, *opts, trials, workers), ax,
                        std::vector<double>(values, values + num_values),
                        out_dir);
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

aadmm_status aadmm_trace(const aadmm_synth_params* params,
                         const aadmm_options* opts, const char* out_dir) {
  AADMM_REQUIRE(params && opts && out_dir,
                "params, opts, and out_dir must be non-NULL");
  try {
    aadmm::trace_to_dir(to_bench(*params, *opts, 1, 1), out_dir);
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

aadmm_status aadmm_mnist(const char* images_path, const char* labels_path,
                         int gunzip, uint64_t m, uint64_t seed,
                         const aadmm_options* opts, const char* out_dir) {
  AADMM_REQUIRE(images_path && labels_path && opts && out_dir,
                "images_path, labels_path, opts, and out_dir must be non-NULL");
  AADMM_REQUIRE(m >= 1, "m must be positive");
  try {
    aadmm::MnistConfig cfg;
    cfg.m = static_cast<Eigen::Index>(m);
    cfg.sigma2 = opts->sigma2;
    cfg.lambda = opts->lambda;
    cfg.seed = seed;
    cfg.opts = opts->outer;
    aadmm::mnist_to_dir(images_path, labels_path, gunzip != 0, cfg, out_dir);
    return AADMM_OK;
  } catch (...) {
    return from_exception();
  }
}

}  // extern "C"
