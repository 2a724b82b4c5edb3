#include "core/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "core/io.hpp"

namespace aadmm {

std::string TrialResult::csv_header() {
  return "seed,mse,sml,ofv,sl,ct_seconds,outer_iterations";
}

std::string TrialResult::csv_row() const {
  std::ostringstream row;
  row << seed << ',' << format_double(mse) << ',' << format_double(sml) << ','
      << format_double(ofv) << ',' << sl << ',' << format_double(ct_seconds)
      << ',' << outer_iterations;
  return row.str();
}

double mse(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x_true) {
  if (x_hat.size() != x_true.size() || x_hat.size() == 0)
    throw std::invalid_argument("mse: vectors must share a positive length");
  return (x_hat - x_true).squaredNorm() / static_cast<double>(x_hat.size());
}

double sml(const IndexSet& s_hat, const IndexSet& s_true, Eigen::Index n) {
  if (n <= 0) throw std::invalid_argument("sml: n must be positive");
  std::size_t intersection = 0;
  auto a = s_hat.begin();
  auto b = s_true.begin();
  while (a != s_hat.end() && b != s_true.end()) {
    if (*a < *b) ++a;
    else if (*b < *a) ++b;
    else { ++intersection; ++a; ++b; }
  }
  const std::size_t symdiff = s_hat.size() + s_true.size() - 2 * intersection;
  return 100.0 * (1.0 - static_cast<double>(symdiff) / static_cast<double>(n));
}

Eigen::Index sparsity_level(const Eigen::VectorXd& x, double tol) {
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > tol) ++count;
  return count;
}

IndexSet support_of(const Eigen::VectorXd& x, double tol) {
  IndexSet s;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > tol) s.push_back(i);
  return s;
}

}  // namespace aadmm
