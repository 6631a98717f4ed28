#pragma once

#include <Eigen/Dense>

#include "alknot/errors.hpp"

namespace alknot::detail {

inline constexpr double kRankTolerance = 1e-10;

/// Least squares via column-pivoted QR with a relative rank check.
inline Eigen::VectorXd lstsq(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < X.cols()) throw numeric_error("rank-deficient design matrix");
  return qr.solve(y);
}

/// Type-7 quantile (linear interpolation between order statistics) of a
/// sorted vector.
inline double quantile_sorted(const std::vector<double>& sorted, double prob) {
  const auto n = sorted.size();
  if (n == 0) throw invalid_length_error("quantile of empty sample");
  if (n == 1) return sorted[0];
  const double h = prob * static_cast<double>(n - 1);
  auto lo = static_cast<std::size_t>(h);
  if (lo >= n - 1) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace alknot::detail
