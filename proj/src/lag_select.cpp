#include "alknot/lag_select.hpp"

#include <algorithm>
#include <cmath>

#include "alknot/adf.hpp"
#include "alknot/linalg.hpp"

namespace alknot {

int default_kmax(int T) {
  if (T < 10) throw invalid_length_error("default_kmax: need T >= 10");
  return static_cast<int>(
      std::floor(12.0 * std::pow(static_cast<double>(T) / 100.0, 0.25)));
}

namespace {

struct LagFitParts {
  double rss = 0.0;
  double xi0 = 0.0;
  double level_sq_sum = 0.0;  // sum of y_{t-1}^2 over the estimation rows
  Eigen::VectorXd delta;      // lag-difference coefficients
};

// Regression at lag k with rows starting at 0-based index first_row.
LagFitParts fit_lag_regression(std::span<const double> y_d, int k, int first_row) {
  const int T = static_cast<int>(y_d.size());
  if (first_row < k + 1 || T - first_row < k + 3)
    throw invalid_length_error("lag regression: sample too short for k = " +
                               std::to_string(k));
  const auto [mn, mx] = std::minmax_element(y_d.begin(), y_d.end());
  if (*mn == *mx)
    throw degenerate_error("lag regression: constant series, zero deviance");
  Eigen::MatrixXd X;
  Eigen::VectorXd resp;
  detail::adf_rows(y_d, k, first_row, X, resp);
  const Eigen::VectorXd beta = detail::lstsq(X, resp);
  LagFitParts parts;
  parts.rss = (resp - X * beta).squaredNorm();
  parts.xi0 = beta(0);
  parts.level_sq_sum = X.col(0).squaredNorm();
  parts.delta = beta.tail(k);
  return parts;
}

}  // namespace

double maic(std::span<const double> y_d, int k, int k_max, bool common_sample) {
  const int T = static_cast<int>(y_d.size());
  if (k < 0 || k > k_max) throw std::invalid_argument("maic: need 0 <= k <= k_max");
  const int first_row = common_sample ? k_max + 1 : k + 1;
  const LagFitParts parts = fit_lag_regression(y_d, k, first_row);
  const int denom = T - k_max;
  const double sigma2_tilde = parts.rss / static_cast<double>(denom);
  if (!(sigma2_tilde > 0.0)) throw degenerate_error("maic: zero deviance estimate");
  const double tau_k = parts.xi0 * parts.xi0 * parts.level_sq_sum / sigma2_tilde;
  return maic_from_parts(sigma2_tilde, tau_k, k, denom);
}

double ar_lrv(std::span<const double> y_d, int k) {
  const int T = static_cast<int>(y_d.size());
  const LagFitParts parts = fit_lag_regression(y_d, k, k + 1);
  const double sigma2_k = parts.rss / static_cast<double>(T - k);
  const double denom = 1.0 - parts.delta.sum();
  if (std::abs(denom) <= 1e-8)
    throw numeric_error("ar_lrv: AR polynomial denominator |1 - sum(delta)| = " +
                        std::to_string(std::abs(denom)) + " is near zero");
  return sigma2_k / (denom * denom);
}

LagSelection select_lag(std::span<const double> y_d, int k_max) {
  const int T = static_cast<int>(y_d.size());
  // Keep a few residual degrees of freedom on the common sample.
  const int feasible = (T - 6) / 2;
  k_max = std::max(0, std::min(k_max, feasible));

  LagSelection sel;
  sel.k_max = k_max;
  sel.maic_values.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    sel.maic_values.push_back(maic(y_d, k, k_max));
  }
  sel.k_hat = static_cast<int>(
      std::min_element(sel.maic_values.begin(), sel.maic_values.end()) -
      sel.maic_values.begin());
  sel.lrv = ar_lrv(y_d, sel.k_hat);
  return sel;
}

LagSelection select_lag(std::span<const double> y_d) {
  return select_lag(y_d, default_kmax(static_cast<int>(y_d.size())));
}

}  // namespace alknot
