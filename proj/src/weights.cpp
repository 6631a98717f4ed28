#include "alknot/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "alknot/lag_select.hpp"
#include "alknot/linalg.hpp"

namespace alknot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_gammas(double gamma1, double gamma2) {
  if (!(gamma1 > 0.5))
    throw std::invalid_argument("penalty weights: gamma1 must exceed 1/2");
  if (!(gamma2 > 0.0))
    throw std::invalid_argument("penalty weights: gamma2 must be positive");
}

}  // namespace

PenaltyWeights ols_weights(const OlsFit& fit, double gamma1, double gamma2) {
  check_gammas(gamma1, gamma2);
  PenaltyWeights w;
  w.gamma1 = gamma1;
  w.gamma2 = gamma2;
  w.w1 = fit.rho_hat == 0.0 ? kInf : 1.0 / std::abs(fit.rho_hat);
  w.w2.resize(fit.delta_hat.size());
  for (Eigen::Index j = 0; j < fit.delta_hat.size(); ++j) {
    w.w2(j) = fit.delta_hat(j) == 0.0 ? kInf : 1.0 / std::abs(fit.delta_hat(j));
  }
  return w;
}

double j_alpha(std::span<const double> y, DeterministicKind kind, double alpha,
               int R, int k, Rng& rng) {
  if (R < 20) throw std::invalid_argument("j_alpha: need R >= 20 replications");
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("j_alpha: alpha must lie in (0, 0.5)");

  const std::vector<double> adjusted = ols_adjust(y, kind);
  const double omega = std::sqrt(ar_lrv(adjusted, k));
  const std::size_t T = adjusted.size();

  std::vector<double> scaled(T);
  for (std::size_t t = 0; t < T; ++t) scaled[t] = adjusted[t] / omega;

  // Regression of the scaled series on (1, t, x_r); only the x-dependent
  // sums change across replications.
  double sum_t = 0.0, sum_tt = 0.0, sum_y = 0.0, sum_ty = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const double tt = static_cast<double>(t + 1);
    sum_t += tt;
    sum_tt += tt * tt;
    sum_y += scaled[t];
    sum_ty += tt * scaled[t];
  }

  std::vector<double> slopes(static_cast<std::size_t>(R));
  const double Td = static_cast<double>(T);
  for (int r = 0; r < R; ++r) {
    double x = 0.0;
    double sum_x = 0.0, sum_tx = 0.0, sum_xx = 0.0, sum_xy = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      x += rng.gaussian();
      const double tt = static_cast<double>(t + 1);
      sum_x += x;
      sum_tx += tt * x;
      sum_xx += x * x;
      sum_xy += x * scaled[t];
    }
    Eigen::Matrix3d A;
    A << Td, sum_t, sum_x, sum_t, sum_tt, sum_tx, sum_x, sum_tx, sum_xx;
    Eigen::Vector3d b(sum_y, sum_ty, sum_xy);
    slopes[static_cast<std::size_t>(r)] = A.partialPivLu().solve(b)(2);
  }

  std::sort(slopes.begin(), slopes.end());
  const double hi = detail::quantile_sorted(slopes, 1.0 - alpha / 2.0);
  const double lo = detail::quantile_sorted(slopes, alpha / 2.0);
  return std::abs(hi - lo);
}

PenaltyWeights enriched_weights(const OlsFit& fit, double j_value, double gamma1,
                                double gamma2) {
  if (!(j_value > 0.0))
    throw std::invalid_argument("enriched_weights: j_value must be positive");
  PenaltyWeights w = ols_weights(fit, gamma1, gamma2);
  w.w1 = fit.rho_hat == 0.0 ? kInf : j_value / std::abs(fit.rho_hat);
  w.j_value = j_value;
  return w;
}

}  // namespace alknot
