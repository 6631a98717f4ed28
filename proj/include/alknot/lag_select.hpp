#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "alknot/errors.hpp"

namespace alknot {

/// k_max = floor(12 * (T/100)^0.25), the usual MAIC search bound.
[[nodiscard]] int default_kmax(int T);

/// MAIC value from its parts: log(sigma2_tilde) + 2 (tau_k + k) / denom.
[[nodiscard]] inline double maic_from_parts(double sigma2_tilde, double tau_k,
                                            int k, int denom) {
  if (!(sigma2_tilde > 0.0))
    throw degenerate_error("maic: zero deviance estimate");
  return std::log(sigma2_tilde) +
         2.0 * (tau_k + static_cast<double>(k)) / static_cast<double>(denom);
}

/// Modified AIC of Ng-Perron (2001) at lag k for the adjusted series y_d.
/// All candidate lags are judged on the common sample t = k_max+2..T when
/// common_sample is true (the default); otherwise each k uses its own full
/// feasible sample.
[[nodiscard]] double maic(std::span<const double> y_d, int k, int k_max,
                          bool common_sample = true);

/// Autoregressive spectral density estimate of the long-run variance at
/// frequency zero: sigma2_k / (1 - sum_j delta_j)^2, with the regression at
/// lag k fitted on its full feasible sample and sigma2_k = RSS / (T - k).
[[nodiscard]] double ar_lrv(std::span<const double> y_d, int k);

struct LagSelection {
  int k_hat = 0;
  int k_max = 0;
  std::vector<double> maic_values;  // k = 0..k_max
  double lrv = 0.0;                 // ar_lrv at k_hat
};

/// MAIC scan over k = 0..k_max; ties resolve to the smallest k. k_max is
/// clamped so the common sample keeps a few degrees of freedom.
[[nodiscard]] LagSelection select_lag(std::span<const double> y_d, int k_max);

[[nodiscard]] LagSelection select_lag(std::span<const double> y_d);

}  // namespace alknot
