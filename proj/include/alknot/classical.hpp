#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alknot/detrend.hpp"
#include "alknot/rng.hpp"

namespace alknot {

enum class ClassicalTest { adf_gls, mz_t, j_alpha };

std::string to_string(ClassicalTest test);

struct ClassicalTestResult {
  double statistic = 0.0;
  std::optional<double> p_value;
  ClassicalTest test = ClassicalTest::adf_gls;
  enum class Tail { left, right } tail = Tail::left;
  int lag = 0;
  double lrv = 0.0;
};

/// t-ratio of the level coefficient in the ADF regression on GLS-adjusted
/// data (Elliott-Rothenberg-Stock detrending); lag by MAIC when k is absent.
[[nodiscard]] ClassicalTestResult adf_gls(std::span<const double> y,
                                          DeterministicKind kind,
                                          std::optional<int> k = std::nullopt);

/// Modified Phillips-Perron MZ_t of Ng-Perron (2001) on GLS-adjusted data
/// with the AR spectral LRV; the lagged-level sum uses y^d_0 := 0.
[[nodiscard]] ClassicalTestResult mz_t(std::span<const double> y,
                                       DeterministicKind kind,
                                       std::optional<int> k = std::nullopt);

/// J_alpha range statistic of Herwartz-Siedenburg (2010) as a left-tailed
/// unit root test on OLS-adjusted data (small values indicate stationarity;
/// the rejection direction follows the spread collapse of balanced
/// regressions under stationarity).
[[nodiscard]] ClassicalTestResult j_alpha_test(std::span<const double> y,
                                               DeterministicKind kind,
                                               double alpha, int R, Rng& rng);

/// Sorted null draws of a classical statistic on zero-start Gaussian random
/// walks with the same adjustment and lag-selection protocol. Deterministic
/// for a given seed at any thread count.
[[nodiscard]] std::vector<double> simulate_classical_null(
    ClassicalTest test, DeterministicKind kind, int T, std::size_t replications,
    std::uint64_t seed, int threads = 1, double alpha = 0.1, int R = 150);

/// Left-tailed add-one p-value against sorted null draws.
[[nodiscard]] double p_value_left(double statistic,
                                  std::span<const double> sorted_null);

namespace detail {
/// MZ_t from an already adjusted series and an LRV estimate (for checks).
[[nodiscard]] double mz_t_from_adjusted(std::span<const double> y_d, double omega2);
}  // namespace detail

}  // namespace alknot
