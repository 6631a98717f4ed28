#include <doctest.h>

#include <cmath>
#include <vector>

#include "alknot/adf.hpp"
#include "alknot/dgp.hpp"
#include "alknot/linalg.hpp"
#include "alknot/weights.hpp"

using namespace alknot;

TEST_CASE("ols_weights: reciprocal estimates and the infinity sentinel") {
  OlsFit fit;
  fit.rho_hat = -0.5;
  fit.delta_hat = Eigen::VectorXd::Zero(2);
  fit.delta_hat << 0.25, 0.0;
  const PenaltyWeights w = ols_weights(fit, 1.0, 1.0);
  CHECK(w.w1 == doctest::Approx(2.0));
  CHECK(w.w2(0) == doctest::Approx(4.0));
  CHECK(std::isinf(w.w2(1)));
}

TEST_CASE("ols_weights: gamma guards") {
  OlsFit fit;
  fit.rho_hat = -0.5;
  fit.delta_hat = Eigen::VectorXd::Zero(0);
  CHECK_THROWS_AS((void)ols_weights(fit, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)ols_weights(fit, 1.0, 0.0), std::invalid_argument);
  CHECK_NOTHROW((void)ols_weights(fit, 0.51, 0.1));
}

TEST_CASE("enriched_weights: formula and identity enrichment") {
  OlsFit fit;
  fit.rho_hat = -0.5;
  fit.delta_hat = Eigen::VectorXd::Zero(1);
  fit.delta_hat << 0.1;
  const PenaltyWeights w = enriched_weights(fit, 2.0);
  CHECK(w.w1 == doctest::Approx(4.0));
  CHECK(w.w2(0) == doctest::Approx(10.0));
  CHECK(w.j_value.value() == doctest::Approx(2.0));

  const PenaltyWeights plain = ols_weights(fit);
  const PenaltyWeights unit = enriched_weights(fit, 1.0);
  CHECK(unit.w1 == doctest::Approx(plain.w1));

  CHECK_THROWS_AS((void)enriched_weights(fit, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)enriched_weights(fit, -1.0), std::invalid_argument);
}

TEST_CASE("quantile rule: interpolated interquantile range") {
  std::vector<double> slopes = {-2, -1, 1, 2};
  const double hi = detail::quantile_sorted(slopes, 0.75);
  const double lo = detail::quantile_sorted(slopes, 0.25);
  CHECK(hi == doctest::Approx(1.25));
  CHECK(lo == doctest::Approx(-1.25));
  CHECK(std::abs(hi - lo) == doctest::Approx(2.5));
}

TEST_CASE("j_alpha: argument guards") {
  Rng rng(1);
  const std::vector<double> y = gaussian_random_walk(60, rng);
  CHECK_THROWS_AS((void)j_alpha(y, DeterministicKind::constant, 0.1, 10, 0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)j_alpha(y, DeterministicKind::constant, 0.6, 50, 0, rng),
                  std::invalid_argument);
}

TEST_CASE("j_alpha: exact scale invariance with a shared stream") {
  Rng rng_data(77);
  const std::vector<double> y = gaussian_random_walk(80, rng_data);
  std::vector<double> y2(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) y2[t] = 3.5 * y[t];

  Rng rng_a(123), rng_b(123);
  const double j1 = j_alpha(y, DeterministicKind::constant, 0.1, 40, 0, rng_a);
  const double j2 = j_alpha(y2, DeterministicKind::constant, 0.1, 40, 0, rng_b);
  CHECK(j1 == doctest::Approx(j2).epsilon(1e-12));
  CHECK(j1 > 0.0);
}

TEST_CASE("j_alpha: stationary series yields smaller J than a random walk") {
  // The balanced/unbalanced regression contrast behind the statistic: slopes
  // collapse for stationary y, spread out under a stochastic trend.
  Rng rng(500);
  double j_stat = 0.0, j_walk = 0.0;
  const int reps = 20;
  for (int i = 0; i < reps; ++i) {
    std::vector<double> stationary(200);
    double x = 0.0;
    for (auto& v : stationary) {
      x = 0.5 * x + rng.gaussian();
      v = x;
    }
    const std::vector<double> walk = gaussian_random_walk(200, rng);
    j_stat += j_alpha(stationary, DeterministicKind::constant, 0.1, 60, 1, rng);
    j_walk += j_alpha(walk, DeterministicKind::constant, 0.1, 60, 1, rng);
  }
  CHECK(j_stat / reps < j_walk / reps);
}
