#include "alknot/adf.hpp"

#include <algorithm>
#include <cmath>

#include "alknot/linalg.hpp"

namespace alknot {

namespace detail {

void adf_rows(std::span<const double> y, int p, int first_row, Eigen::MatrixXd& X,
              Eigen::VectorXd& response) {
  const int T = static_cast<int>(y.size());
  const int n = T - first_row;
  X.resize(n, p + 1);
  response.resize(n);
  for (int i = 0; i < n; ++i) {
    const int t = first_row + i;  // 0-based index of y_t
    response(i) = y[t] - y[t - 1];
    X(i, 0) = y[t - 1];
    for (int j = 1; j <= p; ++j) {
      X(i, j) = y[t - j] - y[t - j - 1];
    }
  }
}

}  // namespace detail

AdfDesign build_design(std::span<const double> y, int p) {
  if (p < 0) throw std::invalid_argument("build_design: p must be >= 0");
  const int T = static_cast<int>(y.size());
  if (T < p + 4)
    throw invalid_length_error("build_design: need T >= p + 4, got T = " +
                               std::to_string(T) + ", p = " + std::to_string(p));
  AdfDesign d;
  d.p = p;
  d.T = T;
  detail::adf_rows(y, p, p + 1, d.X, d.response);
  return d;
}

OlsFit ols_fit(const AdfDesign& design) {
  const auto& X = design.X;
  const auto& y = design.response;

  if (X.norm() == 0.0)
    throw degenerate_error("ols_fit: all-zero design (constant input series)");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(detail::kRankTolerance);
  if (qr.rank() < X.cols())
    throw numeric_error("ols_fit: singular normal equations (rank " +
                        std::to_string(qr.rank()) + " < " +
                        std::to_string(X.cols()) + ")");
  const Eigen::VectorXd beta = qr.solve(y);

  OlsFit fit;
  fit.residuals = y - X * beta;
  const double ssr = fit.residuals.squaredNorm();
  const double n = static_cast<double>(design.n());
  fit.sigma2_hat = ssr / n;

  const double scale = std::max(1.0, y.squaredNorm());
  if (ssr <= 1e-24 * scale)
    throw degenerate_error("ols_fit: residual variance is numerically zero");

  fit.rho_hat = beta(0);
  fit.delta_hat = beta.tail(design.p);

  const Eigen::MatrixXd xtx_inv =
      (X.transpose() * X)
          .ldlt()
          .solve(Eigen::MatrixXd::Identity(X.cols(), X.cols()));
  fit.t_ratios.resize(X.cols());
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    fit.t_ratios(i) = beta(i) / std::sqrt(fit.sigma2_hat * xtx_inv(i, i));
  }
  return fit;
}

}  // namespace alknot
