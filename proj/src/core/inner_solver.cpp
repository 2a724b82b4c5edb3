#include "core/inner_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace aadmm {

AdmmOptions AdmmOptions::tightened(double factor) const {
  AdmmOptions t = *this;
  t.abs_tol /= factor;
  t.rel_tol /= factor;
  t.max_iter = static_cast<int>(max_iter * factor);
  return t;
}

double soft_threshold(double v, double beta) {
  if (v > beta) return v - beta;
  if (v < -beta) return v + beta;
  return 0.0;
}

double soft_threshold_nonneg(double v, double beta) {
  return std::max(0.0, soft_threshold(v, beta));
}

AdmmResult solve_restricted(const Eigen::MatrixXd& a_s,
                            const Eigen::VectorXd& y, double lambda,
                            const AdmmOptions& opts,
                            const Eigen::VectorXd* warm_start) {
  if (!(opts.rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");

  const Eigen::Index p = a_s.cols();
  AdmmResult result;
  if (p == 0) {
    result.x.resize(0);
    return result;
  }
  if (warm_start && warm_start->size() != p)
    throw std::invalid_argument("warm start length differs from |S|");

  const double rho = opts.rho;
  Eigen::MatrixXd gram = 2.0 * (a_s.transpose() * a_s);
  gram.diagonal().array() += rho;
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  const Eigen::VectorXd aty2 = 2.0 * (a_s.transpose() * y);

  Eigen::VectorXd x = warm_start ? *warm_start : Eigen::VectorXd::Zero(p);
  Eigen::VectorXd z = x;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd z_old(p);

  const double beta = lambda / rho;
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  result.converged = false;

  int it = 0;
  while (it < opts.max_iter) {
    ++it;
    x = llt.solve(aty2 + rho * (z - u));
    z_old = z;
    for (Eigen::Index i = 0; i < p; ++i) {
      const double v = x[i] + u[i];
      z[i] = opts.nonneg ? soft_threshold_nonneg(v, beta)
                         : soft_threshold(v, beta);
    }
    u += x - z;

    result.primal_residual = (x - z).norm();
    result.dual_residual = rho * (z - z_old).norm();
    const double eps_pri =
        sqrt_p * opts.abs_tol + opts.rel_tol * std::max(x.norm(), z.norm());
    const double eps_dual =
        sqrt_p * opts.abs_tol + opts.rel_tol * rho * u.norm();
    if (result.primal_residual <= eps_pri &&
        result.dual_residual <= eps_dual) {
      result.converged = true;
      break;
    }
  }

  result.iterations = it;
  result.x = std::move(z);  // thresholded iterate carries exact zeros
  return result;
}

}  // namespace aadmm
