// Command-line front end for the adaptive sparse-recovery solver. All
// functionality is reached through the C API in aadmm/aadmm.h; this file
// only parses flags and maps statuses to exit codes (0 ok, 1 usage error,
// 2 I/O error, 3 solver non-convergence under --strict).

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "aadmm/aadmm.h"

namespace {

struct OptionsGuard {
  aadmm_options* ptr = aadmm_options_create();
  ~OptionsGuard() { aadmm_options_destroy(ptr); }
};

struct CommonFlags {
  std::uint64_t seed = 0;
  std::string out = ".";
  int workers = 1;
  bool nonneg = false;
  double lambda = 2e-4;
  double sigma2 = 3.24e-4;
  std::string kappa = "rate";
  double rho = 1.0;
  double tol = 1e-6;
  int max_iter = 2000;
  int max_outer = 0;
};

void add_solver_flags(CLI::App& cmd, CommonFlags& flags) {
  cmd.add_option("--seed", flags.seed, "Base RNG seed");
  cmd.add_option("--out", flags.out, "Output directory");
  cmd.add_flag("--nonneg", flags.nonneg, "Constrain the signal to x >= 0");
  cmd.add_option("--lambda", flags.lambda, "L1 regularization weight")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--sigma2", flags.sigma2, "Noise variance")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--kappa", flags.kappa,
                 "Prior inclusion probability in (0,1), or 'rate' for k/n");
  cmd.add_option("--rho", flags.rho, "ADMM penalty parameter")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--tol", flags.tol,
                 "Inner relative tolerance (absolute tolerance is tol/100)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--max-iter", flags.max_iter, "Inner ADMM iteration cap")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--max-outer", flags.max_outer,
                 "Outer iteration cap (0 means 4n)");
}

// Returns false (usage error) when the kappa string is malformed.
bool apply_flags(aadmm_options* opts, const CommonFlags& flags) {
  aadmm_options_set_lambda(opts, flags.lambda);
  aadmm_options_set_sigma2(opts, flags.sigma2);
  aadmm_options_set_rho(opts, flags.rho);
  aadmm_options_set_tolerances(opts, flags.tol / 100.0, flags.tol);
  aadmm_options_set_max_iter(opts, flags.max_iter);
  aadmm_options_set_max_outer(opts, flags.max_outer);
  aadmm_options_set_nonneg(opts, flags.nonneg ? 1 : 0);
  if (flags.kappa == "rate") {
    aadmm_options_set_kappa_rate(opts);
    return true;
  }
  try {
    const double value = std::stod(flags.kappa);
    return aadmm_options_set_kappa(opts, value) == AADMM_OK;
  } catch (const std::exception&) {
    return false;
  }
}

int exit_code_for(aadmm_status status) {
  switch (status) {
    case AADMM_OK: return 0;
    case AADMM_ERR_INVALID_ARGUMENT: return 1;
    case AADMM_ERR_IO: return 2;
    case AADMM_ERR_NO_CONVERGENCE: return 3;
  }
  return 1;
}

int finish(aadmm_status status) {
  if (status != AADMM_OK)
    std::fprintf(stderr, "error: %s\n", aadmm_last_error());
  return exit_code_for(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse signal recovery via adaptive support search with an "
               "ADMM inner solver"};
  app.require_subcommand(1);

  CommonFlags flags;
  aadmm_synth_params synth;
  aadmm_synth_params_init(&synth);
  std::uint64_t trials = 50;

  const auto add_synth_flags = [&](CLI::App& cmd) {
    cmd.add_option("--n", synth.n, "Signal length")->check(CLI::PositiveNumber);
    cmd.add_option("--m", synth.m, "Number of measurements")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--k", synth.k, "True sparsity level");
    cmd.add_option("--laplace-scale", synth.laplace_scale,
                   "Slab scale (<= 0 selects 2*sigma2/lambda)");
  };

  // gen ----------------------------------------------------------------
  CLI::App* gen = app.add_subcommand("gen", "Write a synthetic problem as CSV");
  add_solver_flags(*gen, flags);
  add_synth_flags(*gen);

  // solve --------------------------------------------------------------
  CLI::App* solve = app.add_subcommand("solve", "Recover a signal from CSV data");
  std::string a_path, y_path, x_path;
  bool strict = false;
  solve->add_option("--A", a_path, "Measurement matrix CSV")->required();
  solve->add_option("--y", y_path, "Observation vector CSV")->required();
  solve->add_option("--x", x_path, "Ground-truth vector CSV (enables metrics)");
  solve->add_flag("--strict", strict,
                  "Exit 3 when the inner solver failed to converge");
  add_solver_flags(*solve, flags);

  // bench --------------------------------------------------------------
  CLI::App* bench = app.add_subcommand(
      "bench", "Run repeated synthetic recovery trials and aggregate");
  bench->add_option("--trials", trials, "Number of trials (500 for the full-scale study)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--workers", flags.workers, "Concurrent trial workers")
      ->check(CLI::PositiveNumber);
  add_solver_flags(*bench, flags);
  add_synth_flags(*bench);

  // sweep ----------------------------------------------------------------
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Benchmark along a sparsity, noise, or lambda axis");
  std::string axis_name;
  std::vector<double> axis_values;
  sweep->add_option("--axis", axis_name, "One of: sparsity, noise, lambda")
      ->required()
      ->check(CLI::IsMember({"sparsity", "noise", "lambda"}));
  sweep->add_option("--values", axis_values, "Ascending axis values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--trials", trials, "Trials per axis value")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--workers", flags.workers, "Concurrent trial workers")
      ->check(CLI::PositiveNumber);
  add_solver_flags(*sweep, flags);
  add_synth_flags(*sweep);

  // trace ----------------------------------------------------------------
  CLI::App* trace = app.add_subcommand(
      "trace", "Record per-iteration MSE and objective for one trial");
  add_solver_flags(*trace, flags);
  add_synth_flags(*trace);

  // mnist ----------------------------------------------------------------
  CLI::App* mnist = app.add_subcommand(
      "mnist", "Recover one exemplar of each digit from IDX files");
  std::string images_path, labels_path;
  bool gunzip = false;
  std::uint64_t mnist_m = 550;
  mnist->add_option("--images", images_path, "IDX image file")->required();
  mnist->add_option("--labels", labels_path, "IDX label file")->required();
  mnist->add_flag("--gunzip", gunzip, "Decompress the IDX files in memory");
  mnist->add_option("--m", mnist_m, "Number of measurements")
      ->check(CLI::PositiveNumber);
  add_solver_flags(*mnist, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  OptionsGuard opts;
  if (!apply_flags(opts.ptr, flags)) {
    std::fprintf(stderr, "error: --kappa expects a value in (0,1) or 'rate'\n");
    return 1;
  }
  synth.sigma2 = flags.sigma2;
  synth.lambda = flags.lambda;
  synth.nonneg = flags.nonneg ? 1 : 0;
  synth.seed = flags.seed;

  if (gen->parsed()) return finish(aadmm_gen(&synth, flags.out.c_str()));

  if (solve->parsed()) {
    aadmm_report* report = nullptr;
    const aadmm_status status = aadmm_solve_files(
        a_path.c_str(), y_path.c_str(), x_path.empty() ? nullptr : x_path.c_str(),
        opts.ptr, flags.out.c_str(), &report);
    if (status != AADMM_OK) return finish(status);
    const bool warned = aadmm_report_inner_warning(report) != 0;
    aadmm_report_destroy(report);
    if (strict && warned) {
      std::fprintf(stderr, "error: inner solver did not converge\n");
      return 3;
    }
    return 0;
  }

  if (bench->parsed())
    return finish(aadmm_bench(&synth, opts.ptr, trials, flags.workers,
                              flags.out.c_str()));

  if (sweep->parsed()) {
    aadmm_sweep_axis axis = AADMM_SWEEP_LAMBDA;
    if (axis_name == "sparsity") axis = AADMM_SWEEP_SPARSITY;
    else if (axis_name == "noise") axis = AADMM_SWEEP_NOISE;
    return finish(aadmm_sweep(&synth, opts.ptr, axis, axis_values.data(),
                              axis_values.size(), trials, flags.workers,
                              flags.out.c_str()));
  }

  if (trace->parsed())
    return finish(aadmm_trace(&synth, opts.ptr, flags.out.c_str()));

  if (mnist->parsed())
    return finish(aadmm_mnist(images_path.c_str(), labels_path.c_str(),
                              gunzip ? 1 : 0, mnist_m, flags.seed, opts.ptr,
                              flags.out.c_str()));

  return 1;
}
