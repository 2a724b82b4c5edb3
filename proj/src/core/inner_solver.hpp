#ifndef AADMM_CORE_INNER_SOLVER_HPP
#define AADMM_CORE_INNER_SOLVER_HPP

#include <Eigen/Dense>

namespace aadmm {

struct AdmmOptions {
  double rho = 1.0;
  double abs_tol = 1e-8;
  double rel_tol = 1e-6;
  int max_iter = 2000;
  bool nonneg = false;

  // Tolerances divided by `factor`, iteration cap multiplied by it.
  AdmmOptions tightened(double factor = 10.0) const;
};

struct AdmmResult {
  Eigen::VectorXd x;  // length |S|; exact zeros where thresholded
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = true;
};

// v shrunk toward zero by beta; the closed dead zone |v| <= beta maps to 0.
double soft_threshold(double v, double beta);

// max(0, soft_threshold(v, beta)).
double soft_threshold_nonneg(double v, double beta);

// Minimizes ||y - A_S x||_2^2 + lambda*||x||_1 (optionally subject to
// x >= 0) by ADMM. The x-update solves (2 A_S^T A_S + rho I) x =
// 2 A_S^T y + rho (z - u) through a Cholesky factorization computed once;
// the z-update soft-thresholds x + u at lambda/rho. `warm_start`, when
// given, seeds x and z.
AdmmResult solve_restricted(const Eigen::MatrixXd& a_s,
                            const Eigen::VectorXd& y, double lambda,
                            const AdmmOptions& opts,
                            const Eigen::VectorXd* warm_start = nullptr);

}  // namespace aadmm

#endif
