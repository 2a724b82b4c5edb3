#include <doctest.h>

#include <cmath>
#include <cstring>

#include "core/datagen.hpp"
#include "core/metrics.hpp"

using namespace aadmm;

TEST_CASE("gen_signal produces exactly k nonzeros") {
  SynthConfig cfg;
  cfg.n = 64;
  cfg.k = 7;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    rng::CounterRng stream(seed);
    const Eigen::VectorXd x = gen_signal(cfg, stream);
    CHECK(sparsity_level(x) == 7);
  }

  cfg.k = 0;
  rng::CounterRng stream(1);
  CHECK(gen_signal(cfg, stream).cwiseAbs().maxCoeff() == 0.0);

  cfg.k = 65;
  CHECK_THROWS_AS(gen_signal(cfg, stream), std::invalid_argument);
}

TEST_CASE("gen_signal nonneg mode takes absolute values") {
  SynthConfig cfg;
  cfg.n = 128;
  cfg.k = 40;
  cfg.nonneg = true;
  rng::CounterRng stream(3);
  const Eigen::VectorXd x = gen_signal(cfg, stream);
  CHECK(x.minCoeff() >= 0.0);
  CHECK(sparsity_level(x) == 40);
}

TEST_CASE("nonzero magnitudes average to the slab scale") {
  SynthConfig cfg;
  cfg.n = 100000;
  cfg.k = 100000;  // every entry drawn from the slab
  cfg.laplace_scale = 3.24;
  rng::CounterRng stream(5);
  const Eigen::VectorXd x = gen_signal(cfg, stream);
  const double mean_abs = x.cwiseAbs().mean();
  CHECK(mean_abs == doctest::Approx(3.24).epsilon(0.02));
}

TEST_CASE("slab scale defaults to 2*sigma2/lambda") {
  SynthConfig cfg;
  CHECK(cfg.slab_scale() == doctest::Approx(2.0 * 3.24e-4 / 2e-4));
  cfg.laplace_scale = 1.5;
  CHECK(cfg.slab_scale() == 1.5);
}

TEST_CASE("gen_matrix yields unit columns, reproducibly") {
  rng::CounterRng s1(9), s2(9);
  const Eigen::MatrixXd a = gen_matrix(32, 48, s1);
  const Eigen::MatrixXd b = gen_matrix(32, 48, s2);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    CHECK(std::abs(a.col(j).norm() - 1.0) <= 1e-9);
  CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0);
}

TEST_CASE("normal draws match standard moments") {
  rng::CounterRng stream(11);
  const int n = 1000000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = stream.normal();
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) <= 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gen_problem composes the measurement model") {
  SynthConfig cfg;
  cfg.n = 96;
  cfg.m = 48;
  cfg.k = 10;
  cfg.seed = 21;

  SUBCASE("zero noise gives an exact fit") {
    cfg.sigma2 = 0.0;
    const SynthProblem p = gen_problem(cfg);
    CHECK((p.ensemble.y - p.ensemble.A * p.x_true).cwiseAbs().maxCoeff() ==
          0.0);
  }

  SUBCASE("noise level matches sigma2") {
    cfg.m = 128;
    cfg.sigma2 = 3.24e-4;
    const SynthProblem p = gen_problem(cfg);
    const double avg =
        (p.ensemble.y - p.ensemble.A * p.x_true).squaredNorm() / cfg.m;
    CHECK(avg == doctest::Approx(cfg.sigma2).epsilon(0.2));
  }
}

TEST_CASE("identical configs reproduce bitwise-identical problems") {
  SynthConfig cfg;
  cfg.n = 64;
  cfg.m = 24;
  cfg.k = 6;
  cfg.seed = 33;
  const SynthProblem a = gen_problem(cfg);
  const SynthProblem b = gen_problem(cfg);
  CHECK(std::memcmp(a.ensemble.A.data(), b.ensemble.A.data(),
                    sizeof(double) * a.ensemble.A.size()) == 0);
  CHECK(std::memcmp(a.x_true.data(), b.x_true.data(),
                    sizeof(double) * a.x_true.size()) == 0);
  CHECK(std::memcmp(a.ensemble.y.data(), b.ensemble.y.data(),
                    sizeof(double) * a.ensemble.y.size()) == 0);
}

TEST_CASE("sub-streams are independent") {
  SynthConfig cfg;
  cfg.n = 48;
  cfg.m = 16;
  cfg.k = 5;
  ProblemSeeds seeds = ProblemSeeds::from(77);
  const SynthProblem base = gen_problem(cfg, seeds);

  ProblemSeeds noise_changed = seeds;
  noise_changed.noise ^= 0xDEADBEEF;
  const SynthProblem other = gen_problem(cfg, noise_changed);

  CHECK(std::memcmp(base.ensemble.A.data(), other.ensemble.A.data(),
                    sizeof(double) * base.ensemble.A.size()) == 0);
  CHECK(std::memcmp(base.x_true.data(), other.x_true.data(),
                    sizeof(double) * base.x_true.size()) == 0);
  CHECK((base.ensemble.y - other.ensemble.y).cwiseAbs().maxCoeff() > 0.0);

  ProblemSeeds signal_changed = seeds;
  signal_changed.signal ^= 0xBEEF;
  const SynthProblem third = gen_problem(cfg, signal_changed);
  CHECK(std::memcmp(base.ensemble.A.data(), third.ensemble.A.data(),
                    sizeof(double) * base.ensemble.A.size()) == 0);
  CHECK((base.x_true - third.x_true).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("uniform_below is unbiased over small ranges") {
  rng::CounterRng stream(13);
  int counts[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 50000; ++i) ++counts[stream.uniform_below(5)];
  for (int c : counts) CHECK(c == doctest::Approx(10000).epsilon(0.05));
}

TEST_CASE("laplace draws have the right interquartile scale") {
  rng::CounterRng stream(17);
  // median(|X|) = scale * ln 2 for Laplace(0, scale)
  const double scale = 2.5;
  std::vector<double> mags(20001);
  for (double& v : mags) v = std::abs(stream.laplace(scale));
  std::nth_element(mags.begin(), mags.begin() + 10000, mags.end());
  CHECK(mags[10000] == doctest::Approx(scale * std::log(2.0)).epsilon(0.03));
}
