#include "core/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "core/io.hpp"

namespace aadmm {

namespace {

using nlohmann::json;

constexpr double kKappaClamp = 1e-6;

// Stream roles for the real-image experiment.
enum : std::uint64_t { kMnistMatrixStream = 11, kMnistNoiseBase = 100 };

double clamp_kappa(double k) {
  return std::clamp(k, kKappaClamp, 1.0 - kKappaClamp);
}

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

MetricStats stats_of(const std::vector<double>& xs) {
  MetricStats s;
  const std::size_t n = xs.size();
  if (n == 0) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(n);
  if (n >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stderr_of_mean =
        std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }
  return s;
}

json stats_json(const MetricStats& s) {
  return json{{"mean", s.mean}, {"stderr", s.stderr_of_mean}};
}

json config_json(const BenchmarkConfig& cfg) {
  return json{
      {"synth",
       {{"n", cfg.synth.n},
        {"m", cfg.synth.m},
        {"k", cfg.synth.k},
        {"sigma2", cfg.synth.sigma2},
        {"lambda", cfg.synth.lambda},
        {"laplace_scale", cfg.synth.slab_scale()},
        {"nonneg", cfg.synth.nonneg},
        {"seed", cfg.synth.seed}}},
      {"trials", cfg.trials},
      {"kappa",
       {{"policy", cfg.kappa.kind == KappaPolicy::Kind::oracle_rate
                       ? "oracle_rate"
                       : "uniform"},
        {"value", cfg.kappa.value}}},
      {"solver",
       {{"rho", cfg.opts.admm.rho},
        {"abs_tol", cfg.opts.admm.abs_tol},
        {"rel_tol", cfg.opts.admm.rel_tol},
        {"max_iter", cfg.opts.admm.max_iter},
        {"nonneg", cfg.opts.admm.nonneg},
        {"max_outer", cfg.opts.max_outer},
        {"descent_guard", cfg.opts.descent_guard},
        {"stall_tol", cfg.opts.stall_tol}}},
      {"workers", cfg.workers}};
}

json trace_json(const RecoveryReport& report) {
  json moves = json::array();
  for (const TraceEntry& e : report.trace) {
    json entry{{"iteration", e.iteration},
               {"support_size", e.support_size},
               {"objective", e.objective},
               {"move", to_string(e.move.kind)}};
    if (e.move.kind != MoveKind::stop) entry["index"] = e.move.index;
    moves.push_back(std::move(entry));
  }
  return moves;
}

std::vector<TracePoint> trace_one_mode(const BenchmarkConfig& cfg,
                                       bool nonneg) {
  SynthConfig synth = cfg.synth;
  synth.nonneg = nonneg;
  synth.seed = trial_seed(cfg.synth.seed, 0);
  const SynthProblem problem = gen_problem(synth);

  BenchmarkConfig point = cfg;
  point.synth = synth;
  const HyperParams hp = resolve_hyperparams(point);
  OuterOptions opts = cfg.opts;
  opts.admm.nonneg = nonneg;

  std::vector<TracePoint> points;
  OuterState state = make_state(problem.ensemble, hp, init_support(hp.gamma), opts);
  const auto record = [&](const OuterState& s) {
    const Eigen::VectorXd x = pad_to_full(s.support, s.x_s, synth.n);
    points.push_back({s.iteration, s.support.size(), mse(x, problem.x_true),
                      s.objective});
  };
  record(state);
  const int max_outer = opts.resolved_max_outer(synth.n);
  for (int it = 0; it < max_outer; ++it) {
    StepResult sr = step(state, problem.ensemble, hp, opts);
    if (sr.move.kind == MoveKind::stop) break;
    state = std::move(sr.state);
    record(state);
  }
  return points;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string());
}

std::vector<double> digit_pixels(const Eigen::VectorXd& x) {
  std::vector<double> px(DigitImage::kPixels);
  for (int p = 0; p < DigitImage::kPixels; ++p) px[p] = x[p];
  return px;
}

std::vector<double> support_pixels(const Eigen::VectorXd& x) {
  std::vector<double> px(DigitImage::kPixels, 0.0);
  for (int p = 0; p < DigitImage::kPixels; ++p)
    if (x[p] != 0.0) px[p] = 1.0;
  return px;
}

}  // namespace

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::sparsity: return "sparsity";
    case SweepAxis::noise: return "noise";
    case SweepAxis::lambda: return "lambda";
  }
  return "?";
}

HyperParams resolve_hyperparams(const BenchmarkConfig& cfg) {
  const double kappa =
      cfg.kappa.kind == KappaPolicy::Kind::oracle_rate
          ? clamp_kappa(static_cast<double>(cfg.synth.k) /
                        static_cast<double>(cfg.synth.n))
          : cfg.kappa.value;
  return HyperParams::uniform(cfg.synth.lambda, cfg.synth.sigma2, kappa,
                              cfg.synth.n);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial_index) {
  return base ^ trial_index;
}

TrialResult run_trial(const BenchmarkConfig& cfg, std::uint64_t trial_index) {
  SynthConfig synth = cfg.synth;
  synth.seed = trial_seed(cfg.synth.seed, trial_index);
  const SynthProblem problem = gen_problem(synth);

  BenchmarkConfig point = cfg;
  point.synth = synth;
  const HyperParams hp = resolve_hyperparams(point);
  OuterOptions opts = cfg.opts;
  opts.admm.nonneg = synth.nonneg;

  const auto t0 = std::chrono::steady_clock::now();
  const RecoveryReport report = run(problem.ensemble, hp, opts);
  const double ct = elapsed_seconds(t0);

  TrialResult trial;
  trial.mse = mse(report.estimate.x, problem.x_true);
  trial.sml = sml(report.estimate.support, support_of(problem.x_true),
                  synth.n);
  trial.ofv = report.estimate.objective;
  trial.sl = sparsity_level(report.estimate.x);
  trial.ct_seconds = ct;
  trial.outer_iterations = report.outer_iterations;
  trial.seed = synth.seed;
  trial.inner_warning = report.inner_warning;
  return trial;
}

AggregateResult aggregate_rows(std::vector<TrialResult> rows) {
  AggregateResult agg;
  std::vector<double> mses, smls, ofvs, sls, cts, outers;
  for (const TrialResult& r : rows) {
    mses.push_back(r.mse);
    smls.push_back(r.sml);
    ofvs.push_back(r.ofv);
    sls.push_back(static_cast<double>(r.sl));
    cts.push_back(r.ct_seconds);
    outers.push_back(static_cast<double>(r.outer_iterations));
    if (r.inner_warning) ++agg.warnings;
  }
  agg.mse = stats_of(mses);
  agg.sml = stats_of(smls);
  agg.ofv = stats_of(ofvs);
  agg.sl = stats_of(sls);
  agg.ct = stats_of(cts);
  agg.outer = stats_of(outers);
  agg.rows = std::move(rows);
  return agg;
}

AggregateResult run_benchmark(const BenchmarkConfig& cfg) {
  const int trials = std::max(1, cfg.trials);
  std::vector<TrialResult> rows(trials);
  const int workers =
      std::clamp(cfg.workers, 1, trials);

  if (workers == 1) {
    for (int t = 0; t < trials; ++t)
      rows[t] = run_trial(cfg, static_cast<std::uint64_t>(t));
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < trials; t += workers)
          rows[t] = run_trial(cfg, static_cast<std::uint64_t>(t));
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return aggregate_rows(std::move(rows));
}

std::vector<SweepPoint> run_sweep(const BenchmarkConfig& cfg, SweepAxis axis,
                                  const std::vector<double>& values) {
  if (values.empty())
    throw std::invalid_argument("sweep requires at least one axis value");

  BenchmarkConfig base = cfg;
  base.synth.laplace_scale = cfg.synth.slab_scale();  // freeze signal scale

  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (double v : values) {
    BenchmarkConfig point = base;
    switch (axis) {
      case SweepAxis::sparsity:
        point.synth.k = static_cast<Eigen::Index>(std::llround(v));
        break;
      case SweepAxis::noise:
        point.synth.sigma2 = v;
        break;
      case SweepAxis::lambda:
        point.synth.lambda = v;
        break;
    }
    points.push_back({v, run_benchmark(point)});
  }
  return points;
}

ConvergenceTrace convergence_trace(const BenchmarkConfig& cfg) {
  ConvergenceTrace trace;
  trace.unconstrained = trace_one_mode(cfg, false);
  trace.nonneg = trace_one_mode(cfg, true);
  return trace;
}

BaselineResult baseline_lasso(const MeasurementEnsemble& ens,
                              const HyperParams& hp,
                              const OuterOptions& opts) {
  const AdmmResult inner =
      solve_restricted(ens.A, ens.y, hp.lambda, opts.admm);
  BaselineResult out;
  out.estimate.x = inner.x;
  out.estimate.support = support_of(inner.x);
  out.estimate.objective =
      (ens.y - ens.A * inner.x).squaredNorm() + hp.lambda * inner.x.lpNorm<1>();
  out.converged = inner.converged;
  return out;
}

MnistResult run_mnist(const std::vector<DigitImage>& exemplars,
                      const MnistConfig& cfg) {
  if (exemplars.size() != 10)
    throw std::invalid_argument("expected one exemplar per digit 0-9");

  rng::CounterRng matrix_stream(cfg.seed, kMnistMatrixStream);
  const Eigen::MatrixXd a =
      gen_matrix(cfg.m, DigitImage::kPixels, matrix_stream);

  OuterOptions opts = cfg.opts;
  opts.admm.nonneg = true;

  MnistResult result;
  std::vector<TrialResult> rows;
  const double sigma = std::sqrt(cfg.sigma2);
  for (int d = 0; d < 10; ++d) {
    const Eigen::VectorXd truth = image_to_signal(exemplars[d]);

    MeasurementEnsemble ens;
    ens.A = a;
    Eigen::VectorXd y = a * truth;
    rng::CounterRng noise_stream(cfg.seed, kMnistNoiseBase + d);
    if (sigma > 0.0)
      for (Eigen::Index i = 0; i < y.size(); ++i)
        y[i] += sigma * noise_stream.normal();
    ens.y = std::move(y);

    const double rate = clamp_kappa(
        static_cast<double>(sparsity_level(truth)) / DigitImage::kPixels);
    const HyperParams hp =
        HyperParams::uniform(cfg.lambda, cfg.sigma2, rate, DigitImage::kPixels);

    const auto t0 = std::chrono::steady_clock::now();
    const RecoveryReport report = run(ens, hp, opts);
    const double ct = elapsed_seconds(t0);

    MnistDigitResult digit;
    digit.digit = d;
    digit.truth = truth;
    digit.estimate = report.estimate;
    digit.trial.mse = mse(report.estimate.x, truth);
    digit.trial.sml = sml(report.estimate.support, support_of(truth),
                          DigitImage::kPixels);
    digit.trial.ofv = report.estimate.objective;
    digit.trial.sl = sparsity_level(report.estimate.x);
    digit.trial.ct_seconds = ct;
    digit.trial.outer_iterations = report.outer_iterations;
    digit.trial.seed = cfg.seed ^ static_cast<std::uint64_t>(d);
    digit.trial.inner_warning = report.inner_warning;
    rows.push_back(digit.trial);
    result.digits.push_back(std::move(digit));
  }
  result.aggregate = aggregate_rows(std::move(rows));
  return result;
}

// --- file emission ---------------------------------------------------------

void write_results_csv(const std::filesystem::path& path,
                       const std::vector<TrialResult>& rows) {
  std::string out = TrialResult::csv_header() + "\n";
  for (const TrialResult& r : rows) out += r.csv_row() + "\n";
  write_text_file(path, out);
}

void write_aggregate_json(const std::filesystem::path& path,
                          const BenchmarkConfig& cfg,
                          const AggregateResult& agg) {
  json doc{{"config", config_json(cfg)},
           {"trials", agg.rows.size()},
           {"warnings", agg.warnings},
           {"metrics",
            {{"mse", stats_json(agg.mse)},
             {"sml", stats_json(agg.sml)},
             {"ofv", stats_json(agg.ofv)},
             {"sl", stats_json(agg.sl)},
             {"ct_seconds", stats_json(agg.ct)},
             {"outer_iterations", stats_json(agg.outer)}}}};
  write_text_file(path, doc.dump(2) + "\n");
}

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepPoint>& points) {
  std::string out = "axis_value,metric,mean,stderr\n";
  const auto add = [&](double axis, const char* name, const MetricStats& s) {
    out += format_double(axis);
    out += ',';
    out += name;
    out += ',';
    out += format_double(s.mean);
    out += ',';
    out += format_double(s.stderr_of_mean);
    out += '\n';
  };
  for (const SweepPoint& p : points) {
    add(p.axis_value, "mse", p.result.mse);
    add(p.axis_value, "sml", p.result.sml);
    add(p.axis_value, "ofv", p.result.ofv);
    add(p.axis_value, "sl", p.result.sl);
    add(p.axis_value, "ct_seconds", p.result.ct);
    add(p.axis_value, "outer_iterations", p.result.outer);
  }
  write_text_file(path, out);
}

void write_trace_csv(const std::filesystem::path& path,
                     const ConvergenceTrace& trace) {
  std::string out = "mode,iteration,support_size,mse,objective\n";
  const auto add = [&](const char* mode, const std::vector<TracePoint>& pts) {
    for (const TracePoint& p : pts) {
      out += mode;
      out += ',';
      out += std::to_string(p.iteration);
      out += ',';
      out += std::to_string(p.support_size);
      out += ',';
      out += format_double(p.mse);
      out += ',';
      out += format_double(p.objective);
      out += '\n';
    }
  };
  add("unconstrained", trace.unconstrained);
  add("nonneg", trace.nonneg);
  write_text_file(path, out);
}

void write_hist_csv(const std::filesystem::path& path,
                    const std::vector<TrialResult>& rows, int bins) {
  if (rows.empty()) {
    write_text_file(path, "bin_left,bin_right,count\n");
    return;
  }
  std::vector<double> values;
  values.reserve(rows.size());
  for (const TrialResult& r : rows) values.push_back(r.mse);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  std::string out = "bin_left,bin_right,count\n";
  if (lo == hi) {
    out += format_double(lo) + "," + format_double(hi) + "," +
           std::to_string(values.size()) + "\n";
    write_text_file(path, out);
    return;
  }
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / bins;
  for (double v : values) {
    int b = static_cast<int>((v - lo) / width);
    b = std::clamp(b, 0, bins - 1);
    ++counts[b];
  }
  for (int b = 0; b < bins; ++b) {
    out += format_double(lo + b * width) + "," +
           format_double(b + 1 == bins ? hi : lo + (b + 1) * width) + "," +
           std::to_string(counts[b]) + "\n";
  }
  write_text_file(path, out);
}

// --- directory drivers -------------------------------------------------------

void gen_to_dir(const SynthConfig& synth, const std::filesystem::path& dir) {
  ensure_dir(dir);
  const SynthProblem problem = gen_problem(synth);
  write_matrix_csv(dir / "A.csv", problem.ensemble.A);
  write_vector_csv(dir / "x.csv", problem.x_true);
  write_vector_csv(dir / "y.csv", problem.ensemble.y);
  json doc{{"command", "gen"},
           {"n", synth.n},
           {"m", synth.m},
           {"k", synth.k},
           {"sigma2", synth.sigma2},
           {"lambda", synth.lambda},
           {"laplace_scale", synth.slab_scale()},
           {"nonneg", synth.nonneg},
           {"seed", synth.seed}};
  write_text_file(dir / "config.json", doc.dump(2) + "\n");
}

SolveOutcome solve_to_dir(const SolveRequest& req,
                          const std::filesystem::path& dir) {
  ensure_dir(dir);
  const Eigen::MatrixXd a_raw = read_matrix_csv(req.a_path);
  const Eigen::VectorXd y = read_vector_csv(req.y_path);
  if (y.size() != a_raw.rows())
    throw IoError("y length does not match the rows of A");

  std::optional<Eigen::VectorXd> truth;
  if (req.x_true_path) {
    truth = read_vector_csv(*req.x_true_path);
    if (truth->size() != a_raw.cols())
      throw IoError("x length does not match the columns of A");
  }

  const ColumnScaling scaling = normalize_columns(a_raw);
  MeasurementEnsemble ens;
  ens.A = scaling.a;
  ens.y = y;

  double kappa = req.kappa.value;
  if (req.kappa.kind == KappaPolicy::Kind::oracle_rate) {
    if (!truth)
      throw std::invalid_argument(
          "kappa policy 'rate' needs ground truth to estimate the sparsity");
    kappa = clamp_kappa(static_cast<double>(sparsity_level(*truth)) /
                        static_cast<double>(a_raw.cols()));
  }
  const HyperParams hp =
      HyperParams::uniform(req.lambda, req.sigma2, kappa, a_raw.cols());

  const auto t0 = std::chrono::steady_clock::now();
  SolveOutcome outcome;
  outcome.report = run(ens, hp, req.opts);
  const double ct = elapsed_seconds(t0);

  // Map coefficients back to the units of the caller's columns.
  outcome.x_hat = outcome.report.estimate.x;
  for (Eigen::Index i = 0; i < outcome.x_hat.size(); ++i)
    outcome.x_hat[i] /= scaling.scales[i];
  const Eigen::VectorXd& x_hat = outcome.x_hat;

  outcome.have_truth = truth.has_value();
  outcome.trial.ofv = outcome.report.estimate.objective;
  outcome.trial.sl = sparsity_level(outcome.report.estimate.x);
  outcome.trial.ct_seconds = ct;
  outcome.trial.outer_iterations = outcome.report.outer_iterations;
  outcome.trial.inner_warning = outcome.report.inner_warning;
  if (truth) {
    outcome.trial.mse = mse(x_hat, *truth);
    outcome.trial.sml =
        sml(outcome.report.estimate.support, support_of(*truth), a_raw.cols());
  }

  write_vector_csv(dir / "x_hat.csv", x_hat);
  write_indices_csv(dir / "support.csv", outcome.report.estimate.support);

  json report{{"n", a_raw.cols()},
              {"m", a_raw.rows()},
              {"ofv", outcome.trial.ofv},
              {"sl", outcome.trial.sl},
              {"ct_seconds", outcome.trial.ct_seconds},
              {"outer_iterations", outcome.trial.outer_iterations},
              {"stop_reason", to_string(outcome.report.stop_reason)},
              {"inner_warning", outcome.trial.inner_warning},
              {"mse", truth ? json(outcome.trial.mse) : json(nullptr)},
              {"sml", truth ? json(outcome.trial.sml) : json(nullptr)},
              {"trace", trace_json(outcome.report)}};
  write_text_file(dir / "report.json", report.dump(2) + "\n");

  json config{{"command", "solve"},
              {"A", req.a_path.string()},
              {"y", req.y_path.string()},
              {"x", req.x_true_path ? json(req.x_true_path->string())
                                    : json(nullptr)},
              {"lambda", req.lambda},
              {"sigma2", req.sigma2},
              {"kappa", kappa},
              {"rho", req.opts.admm.rho},
              {"abs_tol", req.opts.admm.abs_tol},
              {"rel_tol", req.opts.admm.rel_tol},
              {"max_iter", req.opts.admm.max_iter},
              {"nonneg", req.opts.admm.nonneg},
              {"max_outer", req.opts.max_outer},
              {"descent_guard", req.opts.descent_guard},
              {"stall_tol", req.opts.stall_tol}};
  write_text_file(dir / "config.json", config.dump(2) + "\n");
  return outcome;
}

AggregateResult bench_to_dir(const BenchmarkConfig& cfg,
                             const std::filesystem::path& dir) {
  ensure_dir(dir);
  AggregateResult agg = run_benchmark(cfg);
  write_results_csv(dir / "results.csv", agg.rows);
  write_aggregate_json(dir / "aggregate.json", cfg, agg);
  write_hist_csv(dir / "hist.csv", agg.rows);
  json config = config_json(cfg);
  config["command"] = "bench";
  write_text_file(dir / "config.json", config.dump(2) + "\n");
  return agg;
}

std::vector<SweepPoint> sweep_to_dir(const BenchmarkConfig& cfg,
                                     SweepAxis axis,
                                     const std::vector<double>& values,
                                     const std::filesystem::path& dir) {
  ensure_dir(dir);
  std::vector<SweepPoint> points = run_sweep(cfg, axis, values);
  write_sweep_csv(dir / "sweep.csv", points);
  json config = config_json(cfg);
  config["command"] = "sweep";
  config["axis"] = to_string(axis);
  config["values"] = values;
  write_text_file(dir / "config.json", config.dump(2) + "\n");
  return points;
}

ConvergenceTrace trace_to_dir(const BenchmarkConfig& cfg,
                              const std::filesystem::path& dir) {
  ensure_dir(dir);
  ConvergenceTrace trace = convergence_trace(cfg);
  write_trace_csv(dir / "trace.csv", trace);
  json config = config_json(cfg);
  config["command"] = "trace";
  write_text_file(dir / "config.json", config.dump(2) + "\n");
  return trace;
}

MnistResult mnist_to_dir(const std::filesystem::path& images_path,
                         const std::filesystem::path& labels_path, bool gunzip,
                         const MnistConfig& cfg,
                         const std::filesystem::path& dir) {
  ensure_dir(dir);
  std::vector<DigitImage> images =
      parse_idx_images(read_binary_file(images_path, gunzip));
  const std::vector<int> labels =
      parse_idx_labels(read_binary_file(labels_path, gunzip));
  attach_labels(images, labels);
  const std::vector<DigitImage> exemplars = pick_digit_exemplars(images);

  MnistResult result = run_mnist(exemplars, cfg);

  json per_digit = json::array();
  for (const MnistDigitResult& d : result.digits) {
    const std::string stem = "digit_" + std::to_string(d.digit);
    write_pgm(dir / (stem + "_original.pgm"), DigitImage::kCols,
              DigitImage::kRows, digit_pixels(d.truth));
    write_pgm(dir / (stem + "_original_support.pgm"), DigitImage::kCols,
              DigitImage::kRows, support_pixels(d.truth));
    write_pgm(dir / (stem + "_recovered.pgm"), DigitImage::kCols,
              DigitImage::kRows, digit_pixels(d.estimate.x));
    write_pgm(dir / (stem + "_recovered_support.pgm"), DigitImage::kCols,
              DigitImage::kRows, support_pixels(d.estimate.x));
    per_digit.push_back({{"digit", d.digit},
                         {"sl_true", sparsity_level(d.truth)},
                         {"sl_recovered", d.trial.sl},
                         {"mse", d.trial.mse},
                         {"sml", d.trial.sml},
                         {"ct_seconds", d.trial.ct_seconds},
                         {"outer_iterations", d.trial.outer_iterations}});
  }
  write_results_csv(dir / "results.csv", result.aggregate.rows);

  json doc{{"config",
            {{"command", "mnist"},
             {"images", images_path.string()},
             {"labels", labels_path.string()},
             {"m", cfg.m},
             {"sigma2", cfg.sigma2},
             {"lambda", cfg.lambda},
             {"seed", cfg.seed},
             {"rho", cfg.opts.admm.rho},
             {"abs_tol", cfg.opts.admm.abs_tol},
             {"rel_tol", cfg.opts.admm.rel_tol},
             {"max_iter", cfg.opts.admm.max_iter},
             {"max_outer", cfg.opts.max_outer}}},
           {"digits", per_digit},
           {"metrics",
            {{"mse", stats_json(result.aggregate.mse)},
             {"sml", stats_json(result.aggregate.sml)},
             {"ofv", stats_json(result.aggregate.ofv)},
             {"sl", stats_json(result.aggregate.sl)},
             {"ct_seconds", stats_json(result.aggregate.ct)},
             {"outer_iterations", stats_json(result.aggregate.outer)}}}};
  write_text_file(dir / "aggregate.json", doc.dump(2) + "\n");

  json config = doc["config"];
  write_text_file(dir / "config.json", config.dump(2) + "\n");
  return result;
}

}  // namespace aadmm
