#include "core/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace aadmm {

bool contains(const IndexSet& s, Eigen::Index i) {
  return std::binary_search(s.begin(), s.end(), i);
}

IndexSet with_index(const IndexSet& s, Eigen::Index i) {
  IndexSet out = s;
  out.insert(std::lower_bound(out.begin(), out.end(), i), i);
  return out;
}

IndexSet without_index(const IndexSet& s, Eigen::Index i) {
  IndexSet out = s;
  const auto it = std::lower_bound(out.begin(), out.end(), i);
  if (it != out.end() && *it == i) out.erase(it);
  return out;
}

MeasurementEnsemble MeasurementEnsemble::make(Eigen::MatrixXd a_raw,
                                              Eigen::VectorXd y) {
  if (a_raw.rows() < 1 || a_raw.cols() < 1)
    throw std::invalid_argument("measurement matrix must be non-empty");
  if (y.size() != a_raw.rows()) {
    std::ostringstream msg;
    msg << "observation length " << y.size() << " does not match matrix rows "
        << a_raw.rows();
    throw std::invalid_argument(msg.str());
  }
  MeasurementEnsemble ens;
  ens.A = normalize_columns(a_raw).a;
  ens.y = std::move(y);
  return ens;
}

Eigen::MatrixXd MeasurementEnsemble::submatrix(const IndexSet& support) const {
  Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    if (support[c] < 0 || support[c] >= A.cols())
      throw std::out_of_range("support index out of range");
    sub.col(static_cast<Eigen::Index>(c)) = A.col(support[c]);
  }
  return sub;
}

HyperParams HyperParams::make(double lambda, double sigma2,
                              Eigen::VectorXd kappa) {
  HyperParams hp;
  hp.gamma = compute_gamma(sigma2, lambda, kappa);
  hp.lambda = lambda;
  hp.sigma2 = sigma2;
  hp.kappa = std::move(kappa);
  return hp;
}

HyperParams HyperParams::uniform(double lambda, double sigma2, double kappa,
                                 Eigen::Index n) {
  return make(lambda, sigma2, Eigen::VectorXd::Constant(n, kappa));
}

Eigen::VectorXd SignalEstimate::omega() const {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index i : support) w[i] = 1.0;
  return w;
}

Eigen::VectorXd compute_gamma(double sigma2, double lambda,
                              const Eigen::VectorXd& kappa) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
  if (!(sigma2 > 0.0)) throw std::domain_error("sigma2 must be positive");
  Eigen::VectorXd gamma(kappa.size());
  for (Eigen::Index i = 0; i < kappa.size(); ++i) {
    const double k = kappa[i];
    if (!(k > 0.0) || !(k < 1.0)) {
      std::ostringstream msg;
      msg << "kappa[" << i << "] = " << k << " is outside (0, 1)";
      throw std::domain_error(msg.str());
    }
    gamma[i] = 2.0 * sigma2 * std::log(4.0 * sigma2 * (1.0 - k) / (lambda * k));
  }
  return gamma;
}

ColumnScaling normalize_columns(const Eigen::MatrixXd& a_raw) {
  ColumnScaling out;
  out.a = a_raw;
  out.scales.resize(a_raw.cols());
  for (Eigen::Index j = 0; j < a_raw.cols(); ++j) {
    const double norm = a_raw.col(j).norm();
    if (norm < 1e-12) {
      std::ostringstream msg;
      msg << "column " << j << " has norm " << norm
          << "; cannot normalize a (near-)zero column";
      throw std::invalid_argument(msg.str());
    }
    out.a.col(j) /= norm;
    out.scales[j] = norm;
  }
  return out;
}

double full_objective(const MeasurementEnsemble& ens, const HyperParams& hp,
                      const Eigen::VectorXd& x, const Eigen::VectorXd& omega) {
  const Eigen::Index n = ens.cols();
  if (x.size() != n || omega.size() != n || hp.gamma.size() != n)
    throw std::invalid_argument("full_objective: dimension mismatch");
  const double residual = (ens.y - ens.A * x).squaredNorm();
  return residual + hp.lambda * x.lpNorm<1>() + omega.dot(hp.gamma);
}

double support_objective(const MeasurementEnsemble& ens, const HyperParams& hp,
                         const IndexSet& support, const Eigen::VectorXd& x_s) {
  if (x_s.size() != static_cast<Eigen::Index>(support.size()))
    throw std::invalid_argument("support_objective: coefficient count differs from |S|");
  Eigen::VectorXd r = ens.y;
  double delta = 0.0;
  for (std::size_t c = 0; c < support.size(); ++c) {
    const Eigen::Index i = support[c];
    if (i < 0 || i >= ens.cols())
      throw std::out_of_range("support_objective: index out of range");
    r -= x_s[static_cast<Eigen::Index>(c)] * ens.A.col(i);
    delta += hp.gamma[i];
  }
  return r.squaredNorm() + hp.lambda * x_s.lpNorm<1>() + delta;
}

Eigen::VectorXd pad_to_full(const IndexSet& support, const Eigen::VectorXd& x_s,
                            Eigen::Index n) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (std::size_t c = 0; c < support.size(); ++c)
    x[support[c]] = x_s[static_cast<Eigen::Index>(c)];
  return x;
}

}  // namespace aadmm
