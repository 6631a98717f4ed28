#pragma once

#include <Eigen/Dense>
#include <span>

#include "alknot/errors.hpp"

namespace alknot {

/// Regression design for Delta y_t = rho y_{t-1} + sum_j delta_j Delta y_{t-j}.
///
/// Rows are t = p+2..T, so n = T - p - 1. Column 0 of X is y_{t-1}, columns
/// 1..p are the lagged differences Delta y_{t-j}.
struct AdfDesign {
  Eigen::VectorXd response;  // Delta y_t
  Eigen::MatrixXd X;         // n x (p+1)
  int p = 0;
  int T = 0;

  [[nodiscard]] Eigen::Index n() const { return response.size(); }
};

[[nodiscard]] AdfDesign build_design(std::span<const double> y, int p);

/// OLS fit of an AdfDesign. sigma2_hat uses the divisor T - p - 1 (the row
/// count), and t_ratios are built from that same variance estimate.
struct OlsFit {
  double rho_hat = 0.0;
  Eigen::VectorXd delta_hat;  // length p
  Eigen::VectorXd residuals;  // length n
  double sigma2_hat = 0.0;
  Eigen::VectorXd t_ratios;   // length p+1
};

/// Throws numeric_error on rank deficiency and degenerate_error when the
/// residual variance vanishes (exact fit), so downstream statistics never
/// divide by zero.
[[nodiscard]] OlsFit ols_fit(const AdfDesign& design);

namespace detail {
/// ADF-type regression rows with an explicit first row (0-based index into y).
/// Used by build_design (first_row = p+1) and by the common-sample MAIC scan.
void adf_rows(std::span<const double> y, int p, int first_row, Eigen::MatrixXd& X,
              Eigen::VectorXd& response);
}  // namespace detail

}  // namespace alknot
