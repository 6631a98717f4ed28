#pragma once

#include <span>
#include <string>
#include <vector>

#include "alknot/errors.hpp"
#include "alknot/rng.hpp"

namespace alknot {

/// Near-integrated series y_t = (1 + c/T) y_{t-1} + v_t with ARMA(1,1) errors
/// v_t = phi v_{t-1} + theta e_{t-1} + e_t (all zero-initialized); generated
/// over T + burn_in steps, the first burn_in discarded.
[[nodiscard]] std::vector<double> gen_arma_near_ur(int T, double c, double phi,
                                                   double theta, Rng& rng,
                                                   int burn_in = 50);

/// Finite-order AR series generated directly from the ADF recursion
/// Delta y_t = rho_star y_{t-1} + sum_j delta_star_j Delta y_{t-j} + e_t with
/// zero initial values; burn_in samples discarded. The implied level AR
/// polynomial is checked via its companion matrix: strictly stable for
/// rho_star < 0, exactly one unit root (rest stable) for rho_star = 0.
[[nodiscard]] std::vector<double> gen_adf_form(int T, double rho_star,
                                               std::span<const double> delta_star,
                                               Rng& rng, int burn_in = 50);

/// y_t + theta1 + theta2 * t, t = 1..T.
[[nodiscard]] std::vector<double> add_deterministic(std::span<const double> y,
                                                    double theta1, double theta2);

/// Euler-discretized Ornstein-Uhlenbeck path x_i = (1 + c/N) x_{i-1} +
/// N^(-1/2) e_i, x_0 = 0; returns (x_1..x_N).
[[nodiscard]] std::vector<double> ou_path(double c, int n_steps, Rng& rng);

/// Same recursion applied to caller-supplied innovations.
[[nodiscard]] std::vector<double> ou_path_from(std::span<const double> innovations,
                                               double c);

/// Zero-start Gaussian random walk of length T (y_t = sum of t innovations).
[[nodiscard]] std::vector<double> gaussian_random_walk(int T, Rng& rng);

}  // namespace alknot
