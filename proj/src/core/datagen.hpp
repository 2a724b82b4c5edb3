#ifndef AADMM_CORE_DATAGEN_HPP
#define AADMM_CORE_DATAGEN_HPP

#include <cstdint>

#include "core/model.hpp"
#include "core/rng.hpp"

namespace aadmm {

// Synthetic problem recipe: Laplacian sparse signal, Gaussian measurement
// matrix with normalized columns, additive Gaussian noise.
struct SynthConfig {
  Eigen::Index n = 512;
  Eigen::Index m = 128;
  Eigen::Index k = 30;
  double sigma2 = 3.24e-4;
  double lambda = 2e-4;
  double laplace_scale = 0.0;  // <= 0 resolves to 2*sigma2/lambda
  bool nonneg = false;
  std::uint64_t seed = 0;

  double slab_scale() const {
    return laplace_scale > 0.0 ? laplace_scale : 2.0 * sigma2 / lambda;
  }
};

// Independent per-component seeds so each part of a problem can be varied
// or reproduced in isolation.
struct ProblemSeeds {
  std::uint64_t matrix = 0;
  std::uint64_t signal = 0;
  std::uint64_t noise = 0;

  static ProblemSeeds from(std::uint64_t seed);
};

// k nonzeros at distinct uniform positions, values Laplace(0, slab_scale);
// absolute values are taken in nonneg mode. Throws if k > n.
Eigen::VectorXd gen_signal(const SynthConfig& cfg, rng::CounterRng& stream);

// i.i.d. standard normal entries, column by column, then column
// normalization. A column drawn (near-)zero is redrawn.
Eigen::MatrixXd gen_matrix(Eigen::Index m, Eigen::Index n,
                           rng::CounterRng& stream);

struct SynthProblem {
  MeasurementEnsemble ensemble;  // y = A x_true + noise
  Eigen::VectorXd x_true;
};

SynthProblem gen_problem(const SynthConfig& cfg);
SynthProblem gen_problem(const SynthConfig& cfg, const ProblemSeeds& seeds);

}  // namespace aadmm

#endif
