#ifndef AADMM_CORE_EXPERIMENTS_HPP
#define AADMM_CORE_EXPERIMENTS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/adaptive.hpp"
#include "core/datagen.hpp"
#include "core/metrics.hpp"
#include "core/mnist_io.hpp"

namespace aadmm {

// How per-index inclusion probabilities are chosen for a benchmark.
// oracle_rate ties kappa to the planned sparsity: kappa_i = k/n.
struct KappaPolicy {
  enum class Kind { uniform_value, oracle_rate };
  Kind kind = Kind::oracle_rate;
  double value = 0.0;  // used by uniform_value
};

struct BenchmarkConfig {
  SynthConfig synth;
  int trials = 50;
  KappaPolicy kappa;
  OuterOptions opts;
  int workers = 1;
};

enum class SweepAxis { sparsity, noise, lambda };

const char* to_string(SweepAxis axis);

struct MetricStats {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

struct AggregateResult {
  std::vector<TrialResult> rows;  // in trial order
  MetricStats mse, sml, ofv, sl, ct, outer;
  int warnings = 0;  // rows whose inner solver reported non-convergence
};

struct SweepPoint {
  double axis_value = 0.0;
  AggregateResult result;
};

struct TracePoint {
  int iteration = 0;
  std::size_t support_size = 0;
  double mse = 0.0;
  double objective = 0.0;
};

// One trace per solver mode; the nonneg run regenerates the signal with
// absolute values so the constraint is feasible.
struct ConvergenceTrace {
  std::vector<TracePoint> unconstrained;
  std::vector<TracePoint> nonneg;
};

struct BaselineResult {
  SignalEstimate estimate;  // objective excludes the inclusion penalties
  bool converged = true;
};

struct MnistConfig {
  Eigen::Index m = 550;
  double sigma2 = 3.24e-4;
  double lambda = 2e-4;
  std::uint64_t seed = 0;
  OuterOptions opts;  // nonneg mode is forced on
};

struct MnistDigitResult {
  int digit = 0;
  TrialResult trial;
  Eigen::VectorXd truth;
  SignalEstimate estimate;
};

struct MnistResult {
  std::vector<MnistDigitResult> digits;
  AggregateResult aggregate;
};

// kappa policy applied at the benchmark's dimensions; lambda and sigma2
// come from the synthesis config so generation and recovery agree.
HyperParams resolve_hyperparams(const BenchmarkConfig& cfg);

// Per-trial derived seed: base xor trial index.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial_index);

// Fresh problem from the derived seed, recovered in the mode of the
// synthesized data (synth.nonneg drives both signal and solver).
TrialResult run_trial(const BenchmarkConfig& cfg, std::uint64_t trial_index);

AggregateResult run_benchmark(const BenchmarkConfig& cfg);

AggregateResult aggregate_rows(std::vector<TrialResult> rows);

// One benchmark per axis value. The slab scale is resolved from the base
// config before the axis override is applied, so sweeping the noise or the
// regularization weight does not silently rescale the signal distribution.
// Trial seeds are shared across points.
std::vector<SweepPoint> run_sweep(const BenchmarkConfig& cfg, SweepAxis axis,
                                  const std::vector<double>& values);

// Per-outer-iteration MSE and objective of trial 0, for both modes.
ConvergenceTrace convergence_trace(const BenchmarkConfig& cfg);

// Plain L1-regularized fit over the full index set (no support search):
// min ||y - A x||^2 + lambda ||x||_1.
BaselineResult baseline_lasso(const MeasurementEnsemble& ens,
                              const HyperParams& hp, const OuterOptions& opts);

// Non-negative recovery of one exemplar per digit from seeded Gaussian
// measurements of each flattened image; one measurement matrix is shared
// by all digits, the noise stream is per digit.
MnistResult run_mnist(const std::vector<DigitImage>& exemplars,
                      const MnistConfig& cfg);

// --- file emission -------------------------------------------------------

void write_results_csv(const std::filesystem::path& path,
                       const std::vector<TrialResult>& rows);
void write_aggregate_json(const std::filesystem::path& path,
                          const BenchmarkConfig& cfg,
                          const AggregateResult& agg);
void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepPoint>& points);
void write_trace_csv(const std::filesystem::path& path,
                     const ConvergenceTrace& trace);
// MSE histogram: bin_left,bin_right,count over the observed range.
void write_hist_csv(const std::filesystem::path& path,
                    const std::vector<TrialResult>& rows, int bins = 30);

// --- directory drivers (one per CLI subcommand) --------------------------

// A.csv, x.csv, y.csv, config.json.
void gen_to_dir(const SynthConfig& synth, const std::filesystem::path& dir);

struct SolveRequest {
  std::filesystem::path a_path;
  std::filesystem::path y_path;
  std::optional<std::filesystem::path> x_true_path;
  double lambda = 2e-4;
  double sigma2 = 3.24e-4;
  KappaPolicy kappa{KappaPolicy::Kind::uniform_value, 0.5};
  OuterOptions opts;
};

struct SolveOutcome {
  RecoveryReport report;  // estimate in normalized-column units
  Eigen::VectorXd x_hat;  // rescaled to the caller's column units
  bool have_truth = false;
  TrialResult trial;  // mse/sml meaningful only when have_truth
};

// x_hat.csv (in the units of the input columns), support.csv, report.json,
// config.json.
SolveOutcome solve_to_dir(const SolveRequest& req,
                          const std::filesystem::path& dir);

// results.csv, aggregate.json, hist.csv, config.json.
AggregateResult bench_to_dir(const BenchmarkConfig& cfg,
                             const std::filesystem::path& dir);

// sweep.csv, config.json.
std::vector<SweepPoint> sweep_to_dir(const BenchmarkConfig& cfg,
                                     SweepAxis axis,
                                     const std::vector<double>& values,
                                     const std::filesystem::path& dir);

// trace.csv, config.json.
ConvergenceTrace trace_to_dir(const BenchmarkConfig& cfg,
                              const std::filesystem::path& dir);

// Per-digit PGM images, results.csv (rows in digit order), aggregate.json,
// config.json.
MnistResult mnist_to_dir(const std::filesystem::path& images_path,
                         const std::filesystem::path& labels_path, bool gunzip,
                         const MnistConfig& cfg,
                         const std::filesystem::path& dir);

}  // namespace aadmm

#endif
