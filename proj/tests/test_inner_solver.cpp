#include <doctest.h>

#include <cmath>
#include <cstring>

#include "core/inner_solver.hpp"
#include "oracles.hpp"

using namespace aadmm;

TEST_CASE("soft_threshold branches") {
  CHECK(soft_threshold(2.0, 1.0) == 1.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-2.0, 1.0) == -1.0);
  // closed dead zone: the boundary maps to exactly zero
  CHECK(soft_threshold(1.0, 1.0) == 0.0);
  CHECK(soft_threshold(-1.0, 1.0) == 0.0);
  CHECK(soft_threshold(3.0, 0.0) == 3.0);
}

TEST_CASE("soft_threshold_nonneg clamps the negative branch") {
  CHECK(soft_threshold_nonneg(2.0, 1.0) == 1.0);
  CHECK(soft_threshold_nonneg(-2.0, 1.0) == 0.0);
  CHECK(soft_threshold_nonneg(0.5, 1.0) == 0.0);
}

TEST_CASE("empty support solves to an empty vector") {
  const Eigen::MatrixXd a(4, 0);
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(4);
  const AdmmResult res = solve_restricted(a, y, 0.1, AdmmOptions{});
  CHECK(res.x.size() == 0);
  CHECK(res.converged);
}

TEST_CASE("orthonormal columns recover the soft-thresholded correlations") {
  rng::CounterRng rng(42);
  const Eigen::MatrixXd a = oracles::random_orthonormal(8, 2, rng);
  Eigen::VectorXd coeffs(2);
  coeffs << 1.0, 0.05;
  const Eigen::VectorXd y = a * coeffs;  // A^T y = (1, 0.05)

  const AdmmResult res = solve_restricted(a, y, 0.2, AdmmOptions{});
  CHECK(res.converged);
  CHECK(res.x[0] == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(res.x[1] == 0.0);
}

TEST_CASE("tiny lambda reproduces the least-squares solution") {
  rng::CounterRng rng(43);
  const Eigen::MatrixXd a = oracles::random_unit_columns(12, 5, rng);
  const Eigen::VectorXd y = oracles::random_vector(12, rng);
  const AdmmResult res = solve_restricted(a, y, 1e-12, AdmmOptions{});
  const Eigen::VectorXd ls =
      (a.transpose() * a).llt().solve(a.transpose() * y);
  CHECK(res.converged);
  CHECK((res.x - ls).cwiseAbs().maxCoeff() <= 1e-6);
}

namespace {

void check_kkt(const Eigen::MatrixXd& a, const Eigen::VectorXd& y,
               double lambda, const AdmmOptions& opts,
               const Eigen::VectorXd& x) {
  const Eigen::VectorXd r = y - a * x;
  const double tol_kkt =
      10.0 * std::max(opts.abs_tol, opts.rel_tol * y.norm());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double grad = 2.0 * a.col(j).dot(r);
    if (opts.nonneg) {
      if (x[j] > 0.0) {
        CHECK(std::abs(grad - lambda) <= tol_kkt);
      } else {
        CHECK(grad <= lambda + tol_kkt);
      }
    } else {
      if (x[j] != 0.0) {
        CHECK(std::abs(grad - lambda * (x[j] > 0 ? 1.0 : -1.0)) <= tol_kkt);
      } else {
        CHECK(std::abs(grad) <= lambda + tol_kkt);
      }
    }
  }
}

}  // namespace

TEST_CASE("KKT certificate holds on random instances") {
  AdmmOptions opts;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    rng::CounterRng rng(1000 + seed);
    const Eigen::Index p = 1 + static_cast<Eigen::Index>(rng.uniform_below(10));
    const Eigen::MatrixXd a = oracles::random_unit_columns(20, p, rng);
    const Eigen::VectorXd y = oracles::random_vector(20, rng);
    const double lambda = 0.05 + rng.uniform();
    const AdmmResult res = solve_restricted(a, y, lambda, opts);
    CHECK(res.converged);
    check_kkt(a, y, lambda, opts, res.x);
  }
}

TEST_CASE("KKT certificate holds in nonnegative mode") {
  AdmmOptions opts;
  opts.nonneg = true;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    rng::CounterRng rng(2000 + seed);
    const Eigen::Index p = 1 + static_cast<Eigen::Index>(rng.uniform_below(10));
    const Eigen::MatrixXd a = oracles::random_unit_columns(20, p, rng);
    const Eigen::VectorXd y = oracles::random_vector(20, rng);
    const double lambda = 0.05 + rng.uniform();
    const AdmmResult res = solve_restricted(a, y, lambda, opts);
    CHECK(res.converged);
    for (Eigen::Index j = 0; j < p; ++j) CHECK(res.x[j] >= 0.0);
    check_kkt(a, y, lambda, opts, res.x);
  }
}

TEST_CASE("objective matches the coordinate-descent oracle") {
  AdmmOptions opts;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    rng::CounterRng rng(3000 + seed);
    const Eigen::Index p = 1 + static_cast<Eigen::Index>(rng.uniform_below(10));
    const Eigen::MatrixXd a = oracles::random_unit_columns(20, p, rng);
    const Eigen::VectorXd y = oracles::random_vector(20, rng);
    const double lambda = 0.02 + 0.5 * rng.uniform();

    const AdmmResult res = solve_restricted(a, y, lambda, opts);
    const Eigen::VectorXd cd =
        oracles::coordinate_descent_lasso(a, y, lambda, false);
    const double f_admm = oracles::lasso_objective(a, y, res.x, lambda);
    const double f_cd = oracles::lasso_objective(a, y, cd, lambda);
    CHECK(f_admm == doctest::Approx(f_cd).epsilon(1e-8));
  }
}

TEST_CASE("solves are bitwise deterministic") {
  rng::CounterRng rng(46);
  const Eigen::MatrixXd a = oracles::random_unit_columns(15, 6, rng);
  const Eigen::VectorXd y = oracles::random_vector(15, rng);
  const AdmmResult first = solve_restricted(a, y, 0.1, AdmmOptions{});
  const AdmmResult second = solve_restricted(a, y, 0.1, AdmmOptions{});
  REQUIRE(first.x.size() == second.x.size());
  CHECK(std::memcmp(first.x.data(), second.x.data(),
                    sizeof(double) * first.x.size()) == 0);
  CHECK(first.iterations == second.iterations);
}

TEST_CASE("warm starts do not change the answer and save iterations") {
  rng::CounterRng rng(47);
  const Eigen::MatrixXd a = oracles::random_unit_columns(18, 8, rng);
  const Eigen::VectorXd y = oracles::random_vector(18, rng);
  const AdmmResult cold = solve_restricted(a, y, 0.1, AdmmOptions{});
  const AdmmResult warm = solve_restricted(a, y, 0.1, AdmmOptions{}, &cold.x);
  CHECK((warm.x - cold.x).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK(warm.iterations <= cold.iterations);
}

TEST_CASE("iteration cap reports non-convergence with the best iterate") {
  rng::CounterRng rng(48);
  const Eigen::MatrixXd a = oracles::random_unit_columns(20, 10, rng);
  const Eigen::VectorXd y = oracles::random_vector(20, rng);
  AdmmOptions opts;
  opts.max_iter = 2;
  const AdmmResult res = solve_restricted(a, y, 0.1, opts);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations == 2);
  CHECK(res.x.size() == 10);
}

TEST_CASE("tightened options scale tolerances and the cap") {
  AdmmOptions opts;
  const AdmmOptions tight = opts.tightened();
  CHECK(tight.abs_tol == doctest::Approx(opts.abs_tol / 10.0));
  CHECK(tight.rel_tol == doctest::Approx(opts.rel_tol / 10.0));
  CHECK(tight.max_iter == opts.max_iter * 10);
}
