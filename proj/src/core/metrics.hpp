#ifndef AADMM_CORE_METRICS_HPP
#define AADMM_CORE_METRICS_HPP

#include <cstdint>
#include <string>

#include "core/model.hpp"

namespace aadmm {

// Evaluation of a single recovery run.
struct TrialResult {
  double mse = 0.0;
  double sml = 0.0;  // percent in [0, 100]
  double ofv = 0.0;
  Eigen::Index sl = 0;
  double ct_seconds = 0.0;
  int outer_iterations = 0;
  std::uint64_t seed = 0;
  bool inner_warning = false;  // not part of the CSV row

  std::string csv_row() const;
  static std::string csv_header();  // seed,mse,sml,ofv,sl,ct_seconds,outer_iterations
};

// ||x_hat - x_true||_2^2 / n.
double mse(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x_true);

// 100 * (1 - |S_hat symdiff S_true| / n): indicator agreement over all n
// positions.
double sml(const IndexSet& s_hat, const IndexSet& s_true, Eigen::Index n);

// Number of entries with |x_i| > tol.
Eigen::Index sparsity_level(const Eigen::VectorXd& x, double tol = 0.0);

// Indices with |x_i| > tol, sorted.
IndexSet support_of(const Eigen::VectorXd& x, double tol = 0.0);

}  // namespace aadmm

#endif
