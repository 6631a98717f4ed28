#pragma once

#include <span>
#include <string>

#include "alknot/detrend.hpp"
#include "alknot/rng.hpp"

namespace alknot {

enum class SpacingVariant { plain, adaptive, enriched };

std::string to_string(SpacingVariant variant);
SpacingVariant spacing_variant_from_string(const std::string& name);

/// CDF of a N(mu, sigma2) variable truncated to [v_minus, v_plus], computed
/// by erfc differencing for tail stability and clamped to [0, 1]. Infinite
/// truncation bounds are allowed.
[[nodiscard]] double truncated_gaussian_cdf(double x, double mu, double sigma2,
                                            double v_minus, double v_plus);

/// Spacing test of Tibshirani et al. (2016) for the entry of y_{t-1} on a
/// LAR path: p = [Phi(l_prev nu/s) - Phi(l nu/s)] / [Phi(l_prev nu/s) -
/// Phi(l_next nu/s)], with nu the l2 norm of the change in (X_A^+)' s_A at
/// the entry step.
struct SpacingResult {
  double p_value = 1.0;
  int step = 0;  // 1-based entry step of y_{t-1}; 0 when it never enters
  double nu = 0.0;
  double lambda_prev = 0.0;  // +inf when the level enters first
  double lambda_entry = 0.0;
  double lambda_next = 0.0;
  SpacingVariant variant = SpacingVariant::plain;
  bool degenerate = false;  // level never activated: p = 1 by convention
};

/// Computes the LAR-mode path on plain columns (plain) or on adaptively
/// weighted columns (adaptive with OLS weights, enriched with the
/// J-alpha-scaled level weight, which consumes the rng). sigma is estimated
/// from the auxiliary ADF OLS residuals with divisor T - p - 1.
[[nodiscard]] SpacingResult spacing_pvalue(std::span<const double> y, int p,
                                           DeterministicKind detrending,
                                           SpacingVariant variant,
                                           double gamma1 = 1.0, double gamma2 = 1.0,
                                           double alpha = 0.1, int R = 150,
                                           Rng* rng = nullptr);

/// Enriched variant with a caller-supplied J value (no simulation inside).
[[nodiscard]] SpacingResult spacing_pvalue_with_j(std::span<const double> y, int p,
                                                  DeterministicKind detrending,
                                                  double j_value,
                                                  double gamma1 = 1.0,
                                                  double gamma2 = 1.0);

namespace detail {
/// The spacing ratio from a knot triplet; exposed for direct checks.
[[nodiscard]] double spacing_from_triplet(double lambda_prev, double lambda_entry,
                                          double lambda_next, double nu,
                                          double sigma);
}  // namespace detail

}  // namespace alknot
