#ifndef AADMM_CORE_MODEL_HPP
#define AADMM_CORE_MODEL_HPP

#include <Eigen/Dense>
#include <vector>

namespace aadmm {

// Sorted, duplicate-free set of active indices.
using IndexSet = std::vector<Eigen::Index>;

bool contains(const IndexSet& s, Eigen::Index i);
IndexSet with_index(const IndexSet& s, Eigen::Index i);
IndexSet without_index(const IndexSet& s, Eigen::Index i);

// Measurement matrix with unit-norm columns plus the observation vector.
struct MeasurementEnsemble {
  Eigen::MatrixXd A;  // m x n, every column has 2-norm 1
  Eigen::VectorXd y;  // length m

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index cols() const { return A.cols(); }

  // Normalizes the columns of `a_raw` and checks shapes.
  static MeasurementEnsemble make(Eigen::MatrixXd a_raw, Eigen::VectorXd y);

  Eigen::MatrixXd submatrix(const IndexSet& support) const;
};

// Regularization weight, noise variance, per-index prior inclusion
// probabilities and the penalties they induce.
struct HyperParams {
  double lambda = 0.0;
  double sigma2 = 0.0;
  Eigen::VectorXd kappa;  // entries strictly inside (0, 1)
  Eigen::VectorXd gamma;  // derived from kappa; see compute_gamma

  Eigen::Index size() const { return kappa.size(); }

  static HyperParams make(double lambda, double sigma2, Eigen::VectorXd kappa);
  static HyperParams uniform(double lambda, double sigma2, double kappa,
                             Eigen::Index n);
};

// A recovered signal: dense vector, its support and the objective value.
struct SignalEstimate {
  Eigen::VectorXd x;  // length n, exactly zero off the support
  IndexSet support;
  double objective = 0.0;

  Eigen::VectorXd omega() const;  // 0/1 indicator of the support
};

// gamma_i = 2*sigma2 * log(4*sigma2*(1 - kappa_i) / (lambda * kappa_i)).
// Throws std::domain_error if kappa_i is outside (0,1) or lambda/sigma2
// is not positive.
Eigen::VectorXd compute_gamma(double sigma2, double lambda,
                              const Eigen::VectorXd& kappa);

struct ColumnScaling {
  Eigen::MatrixXd a;       // unit-norm columns
  Eigen::VectorXd scales;  // original column norms
};

// Divides each column by its 2-norm. Throws std::invalid_argument naming
// the column if a norm falls below 1e-12.
ColumnScaling normalize_columns(const Eigen::MatrixXd& a_raw);

// ||y - A x||_2^2 + lambda*||x||_1 + sum_i omega_i * gamma_i.
double full_objective(const MeasurementEnsemble& ens, const HyperParams& hp,
                      const Eigen::VectorXd& x, const Eigen::VectorXd& omega);

// ||y - A^S x_S||_2^2 + lambda*||x_S||_1 + delta_S where
// delta_S = sum_{i in S} gamma_i. Equals full_objective at the zero-padded
// signal with the support indicator.
double support_objective(const MeasurementEnsemble& ens, const HyperParams& hp,
                         const IndexSet& support, const Eigen::VectorXd& x_s);

// Zero-pads a restricted coefficient vector to length n.
Eigen::VectorXd pad_to_full(const IndexSet& support, const Eigen::VectorXd& x_s,
                            Eigen::Index n);

}  // namespace aadmm

#endif
