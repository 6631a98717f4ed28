#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>

#include "alknot/adf.hpp"
#include "alknot/detrend.hpp"
#include "alknot/rng.hpp"

namespace alknot {

/// Adaptive penalty weights. A coefficient estimated as exactly zero gets an
/// infinite weight: the variable never activates on the path.
struct PenaltyWeights {
  double w1 = 1.0;
  Eigen::VectorXd w2;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  std::optional<double> j_value;
};

/// w1 = 1/|rho_hat|, w2_j = 1/|delta_hat_j| from the initial OLS fit.
[[nodiscard]] PenaltyWeights ols_weights(const OlsFit& fit, double gamma1 = 1.0,
                                         double gamma2 = 1.0);

/// Range statistic of Herwartz-Siedenburg (2010): OLS-adjust y for the
/// deterministic component, scale by the inverse AR spectral LRV at lag k,
/// then record the alpha-interquantile range of R simulated slopes from
/// regressing the scaled series on an intercept, a trend and a fresh
/// zero-start Gaussian random walk. Small values indicate stationarity.
[[nodiscard]] double j_alpha(std::span<const double> y, DeterministicKind kind,
                             double alpha, int R, int k, Rng& rng);

/// LRV lag used for the J draw inside the enriched weight (tau_ie, the
/// enriched spacing test and the enriched BIC classifier). A minimal lag
/// keeps the weight stable on short samples and matches the p = 0 null
/// engines that generate the critical-value tables; the standalone j_alpha
/// test selects its lag by MAIC instead.
inline constexpr int kEnrichmentLrvLag = 1;

/// Information-enriched weight for y_{t-1}: w1 = j_value/|rho_hat|. The lag
/// weights stay at their OLS values.
[[nodiscard]] PenaltyWeights enriched_weights(const OlsFit& fit, double j_value,
                                              double gamma1 = 1.0,
                                              double gamma2 = 1.0);

}  // namespace alknot
