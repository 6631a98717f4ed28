#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "alknot/adf.hpp"
#include "alknot/detrend.hpp"
#include "alknot/dgp.hpp"
#include "alknot/linalg.hpp"
#include "alknot/rng.hpp"

using namespace alknot;

TEST_CASE("gen_arma_near_ur: c = 0 with white noise is a random walk") {
  Rng rng(1);
  const auto y = gen_arma_near_ur(200, 0.0, 0.0, 0.0, rng, 0);
  // With zero burn-in the increments are the raw innovations: iid standard
  // normal, so the increment variance is near 1.
  double var = 0.0;
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double d = y[t] - y[t - 1];
    var += d * d;
  }
  var /= static_cast<double>(y.size() - 1);
  CHECK(var == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("gen_arma_near_ur: argument guards") {
  Rng rng(2);
  CHECK_THROWS_AS((void)gen_arma_near_ur(50, 1.0, 0.0, 0.0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)gen_arma_near_ur(50, 0.0, 1.0, 0.0, rng),
                  std::invalid_argument);
}

TEST_CASE("gen_arma_near_ur: lag-1 autocorrelation of the errors") {
  Rng rng(3);
  // Large-sample moment check on the stationary error process: difference a
  // c = 0 path to recover v_t.
  const int T = 100000;
  const auto y = gen_arma_near_ur(T, 0.0, 0.8, 0.0, rng);
  std::vector<double> v(y.size() - 1);
  for (std::size_t t = 1; t < y.size(); ++t) v[t - 1] = y[t] - y[t - 1];
  double c0 = 0.0, c1 = 0.0;
  for (std::size_t t = 1; t < v.size(); ++t) {
    c0 += v[t] * v[t];
    c1 += v[t] * v[t - 1];
  }
  CHECK(c1 / c0 == doctest::Approx(0.8).epsilon(0.025));
}

TEST_CASE("gen_adf_form: rho_star = 0 without lags is a random walk") {
  Rng rng(4);
  const auto y = gen_adf_form(300, 0.0, std::vector<double>{}, rng);
  double var = 0.0;
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double d = y[t] - y[t - 1];
    var += d * d;
  }
  var /= static_cast<double>(y.size() - 1);
  CHECK(var == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("gen_adf_form: recovers the generating coefficients at large T") {
  Rng rng(5);
  const std::vector<double> delta = {-0.4, 0.0, 0.7};
  const auto y = gen_adf_form(100000, -0.05, delta, rng);
  const AdfDesign d = build_design(y, 3);
  const OlsFit fit = ols_fit(d);
  CHECK(fit.rho_hat == doctest::Approx(-0.05).epsilon(0.2));
  CHECK(std::abs(fit.rho_hat - (-0.05)) <= 0.01);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(fit.delta_hat(j) - delta[j]) <= 0.01);
}

TEST_CASE("gen_adf_form: paper parameterizations are accepted") {
  Rng rng(6);
  const std::vector<double> delta_a = {.4, .3, .2, 0, 0, 0, -.2, 0, .2};
  const std::vector<double> delta_b = {-.4, 0, .7};
  const std::vector<double> delta_c = {.8};
  CHECK_NOTHROW((void)gen_adf_form(100, 0.0, delta_a, rng));
  CHECK_NOTHROW((void)gen_adf_form(100, -0.05, delta_b, rng));
  CHECK_NOTHROW((void)gen_adf_form(100, -0.05, delta_c, rng));
}

TEST_CASE("gen_adf_form: explosive configurations are rejected with the root") {
  Rng rng(7);
  CHECK_THROWS_WITH_AS((void)gen_adf_form(100, 0.0, std::vector<double>{1.2}, rng),
                       doctest::Contains("spectral radius"),
                       std::invalid_argument);
  CHECK_THROWS_AS((void)gen_adf_form(100, 0.5, std::vector<double>{}, rng), std::invalid_argument);
}

TEST_CASE("add_deterministic: identity and FD interplay") {
  Rng rng(8);
  const auto y = gaussian_random_walk(60, rng);
  const auto same = add_deterministic(y, 0.0, 0.0);
  for (std::size_t t = 0; t < y.size(); ++t) CHECK(same[t] == y[t]);

  // Level shifts vanish exactly under FD demeaning.
  const auto shifted = add_deterministic(y, 5.0, 0.0);
  const auto fd_base = fd_adjust(y, DeterministicKind::constant);
  const auto fd_shift = fd_adjust(shifted, DeterministicKind::constant);
  // Exact up to the rounding of the shifted values themselves (one ulp).
  for (std::size_t t = 0; t < y.size(); ++t)
    CHECK(fd_shift[t] == doctest::Approx(fd_base[t]).epsilon(1e-14));

  // Trend detrending is invariant to the intercept; adding slope b moves the
  // output by the bounded sequence b (t - T) / T.
  const auto trended = add_deterministic(y, 0.0, 1.0);
  const auto fd_trend_base = fd_adjust(y, DeterministicKind::linear_trend);
  const auto fd_trend = fd_adjust(trended, DeterministicKind::linear_trend);
  const auto fd_trend_shift =
      fd_adjust(add_deterministic(y, 3.0, 1.0), DeterministicKind::linear_trend);
  const double T = static_cast<double>(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) {
    CHECK(fd_trend_shift[t] == doctest::Approx(fd_trend[t]).epsilon(1e-12));
    const double expected_shift = (static_cast<double>(t + 1) - T) / T;
    CHECK(fd_trend[t] - fd_trend_base[t] ==
          doctest::Approx(expected_shift).epsilon(1e-10));
  }
}

TEST_CASE("ou_path: deterministic innovations and the c = 0 walk") {
  const std::vector<double> e = {1.0, 0.0, 0.0, 0.0};
  const auto path = ou_path_from(e, 0.0);
  REQUIRE(path.size() == 4);
  for (double v : path) CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("ou_path: variance at the endpoint matches the OU formula") {
  const int reps = 4000;
  double var0 = 0.0, var30 = 0.0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::substream(909, static_cast<std::uint64_t>(r));
    const auto p0 = ou_path(0.0, 400, rng);
    const auto p30 = ou_path(-30.0, 400, rng);
    var0 += p0.back() * p0.back();
    var30 += p30.back() * p30.back();
  }
  var0 /= reps;
  var30 /= reps;
  CHECK(var0 == doctest::Approx(1.0).epsilon(0.08));
  // (1 - exp(2c)) / (-2c) at c = -30
  const double limit = (1.0 - std::exp(-60.0)) / 60.0;
  CHECK(var30 == doctest::Approx(limit).epsilon(0.15));
}

TEST_CASE("gen_adf_form with rho = 0: increments are stationary") {
  Rng rng(10);
  const auto y = gen_adf_form(100000, 0.0, std::vector<double>{0.5}, rng);
  double mean_dy = 0.0;
  for (std::size_t t = 1; t < y.size(); ++t) mean_dy += y[t] - y[t - 1];
  mean_dy /= static_cast<double>(y.size() - 1);
  // Mean of the differences shrinks at rate sqrt(T).
  CHECK(std::abs(mean_dy) <= 5.0 / std::sqrt(100000.0) * 2.0);
}
