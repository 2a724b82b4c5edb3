#include "core/datagen.hpp"

#include <cmath>
#include <stdexcept>

namespace aadmm {

namespace {

// Stream roles within one problem.
enum : std::uint64_t { kMatrixStream = 1, kSignalStream = 2, kNoiseStream = 3 };

}  // namespace

ProblemSeeds ProblemSeeds::from(std::uint64_t seed) {
  return {rng::mix64(seed + rng::kGolden * kMatrixStream),
          rng::mix64(seed + rng::kGolden * kSignalStream),
          rng::mix64(seed + rng::kGolden * kNoiseStream)};
}

Eigen::VectorXd gen_signal(const SynthConfig& cfg, rng::CounterRng& stream) {
  if (cfg.k > cfg.n)
    throw std::invalid_argument("sparsity k exceeds signal length n");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cfg.n);
  auto positions = stream.sample_without_replacement(
      static_cast<std::uint64_t>(cfg.n), static_cast<std::uint64_t>(cfg.k));
  std::sort(positions.begin(), positions.end());
  const double scale = cfg.slab_scale();
  for (const std::uint64_t pos : positions) {
    double v = stream.laplace(scale);
    if (v == 0.0) v = scale;  // keep exactly k nonzeros
    x[static_cast<Eigen::Index>(pos)] = cfg.nonneg ? std::abs(v) : v;
  }
  return x;
}

Eigen::MatrixXd gen_matrix(Eigen::Index m, Eigen::Index n,
                           rng::CounterRng& stream) {
  if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be positive");
  Eigen::MatrixXd a(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    do {
      for (Eigen::Index i = 0; i < m; ++i) a(i, j) = stream.normal();
    } while (a.col(j).norm() < 1e-12);
  }
  return normalize_columns(a).a;
}

SynthProblem gen_problem(const SynthConfig& cfg) {
  return gen_problem(cfg, ProblemSeeds::from(cfg.seed));
}

SynthProblem gen_problem(const SynthConfig& cfg, const ProblemSeeds& seeds) {
  if (!(cfg.sigma2 >= 0.0))
    throw std::invalid_argument("sigma2 must be nonnegative");
  rng::CounterRng matrix_stream(seeds.matrix, kMatrixStream);
  rng::CounterRng signal_stream(seeds.signal, kSignalStream);
  rng::CounterRng noise_stream(seeds.noise, kNoiseStream);

  SynthProblem problem;
  problem.ensemble.A = gen_matrix(cfg.m, cfg.n, matrix_stream);
  problem.x_true = gen_signal(cfg, signal_stream);

  Eigen::VectorXd y = problem.ensemble.A * problem.x_true;
  const double sigma = std::sqrt(cfg.sigma2);
  if (sigma > 0.0)
    for (Eigen::Index i = 0; i < y.size(); ++i)
      y[i] += sigma * noise_stream.normal();
  problem.ensemble.y = std::move(y);
  return problem;
}

}  // namespace aadmm
