#include <doctest.h>

#include <cmath>
#include <vector>

#include "alknot/detrend.hpp"
#include "alknot/rng.hpp"

using namespace alknot;

TEST_CASE("fd_adjust: constant series demeans to zero") {
  const std::vector<double> y = {5, 5, 5};
  const auto out = fd_adjust(y, DeterministicKind::constant);
  for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("fd_adjust: linear trend formula") {
  const std::vector<double> y = {1, 2, 3};
  const auto out = fd_adjust(y, DeterministicKind::linear_trend);
  CHECK(out[0] == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(out[2] == 0.0);
}

TEST_CASE("fd_adjust: endpoint pins are exact") {
  Rng rng(99);
  std::vector<double> y(40);
  for (auto& v : y) v = 10.0 * rng.gaussian() + 3.0;
  const auto demeaned = fd_adjust(y, DeterministicKind::constant);
  CHECK(demeaned[0] == 0.0);
  const auto detrended = fd_adjust(y, DeterministicKind::linear_trend);
  CHECK(detrended.back() == 0.0);
  const auto identity = fd_adjust(y, DeterministicKind::none);
  for (std::size_t t = 0; t < y.size(); ++t) CHECK(identity[t] == y[t]);
}

TEST_CASE("fd_adjust: length guard") {
  const std::vector<double> y = {1.0};
  CHECK_THROWS_AS((void)fd_adjust(y, DeterministicKind::constant),
                  invalid_length_error);
}

TEST_CASE("ols_adjust: demeaning and exact linear fit") {
  const std::vector<double> y = {1, 2, 3};
  const auto demeaned = ols_adjust(y, DeterministicKind::constant);
  CHECK(demeaned[0] == doctest::Approx(-1.0));
  CHECK(demeaned[1] == doctest::Approx(0.0));
  CHECK(demeaned[2] == doctest::Approx(1.0));
  const auto detrended = ols_adjust(y, DeterministicKind::linear_trend);
  for (double v : detrended) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<double> y2 = {0, 0, 0, 4};
  const auto out2 = ols_adjust(y2, DeterministicKind::constant);
  CHECK(out2[0] == doctest::Approx(-1.0));
  CHECK(out2[3] == doctest::Approx(3.0));
}

TEST_CASE("ols_adjust: residuals orthogonal to deterministic columns") {
  Rng rng(7);
  std::vector<double> y(60);
  for (std::size_t t = 0; t < y.size(); ++t)
    y[t] = 0.5 * static_cast<double>(t) + rng.gaussian();
  const auto resid = ols_adjust(y, DeterministicKind::linear_trend);
  double dot_const = 0.0, dot_trend = 0.0, scale = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    dot_const += resid[t];
    dot_trend += resid[t] * static_cast<double>(t + 1);
    scale += std::abs(y[t]);
  }
  CHECK(std::abs(dot_const) <= 1e-10 * scale);
  CHECK(std::abs(dot_trend) <= 1e-10 * scale * static_cast<double>(y.size()));
}

TEST_CASE("gls_adjust: c_bar = 0 with a constant reduces to y_t - y_1") {
  const std::vector<double> y = {2.5, 3.0, 1.0, 4.0};
  const auto out = gls_adjust(y, DeterministicKind::constant, 0.0);
  for (std::size_t t = 0; t < y.size(); ++t)
    CHECK(out[t] == doctest::Approx(y[t] - y[0]).epsilon(1e-14));
}

TEST_CASE("gls_adjust: exact linear series detrends to zero") {
  std::vector<double> y(30);
  for (std::size_t t = 0; t < y.size(); ++t)
    y[t] = 4.0 - 0.25 * static_cast<double>(t + 1);
  const auto out = gls_adjust(y, DeterministicKind::linear_trend);
  for (double v : out) CHECK(v == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("gls_adjust: defaults and argument guards") {
  CHECK(default_gls_cbar(DeterministicKind::constant) == -7.0);
  CHECK(default_gls_cbar(DeterministicKind::linear_trend) == -13.5);
  const std::vector<double> y = {1, 2, 3, 4};
  CHECK_THROWS_AS((void)gls_adjust(y, DeterministicKind::none, -7.0),
                  std::invalid_argument);
}

TEST_CASE("adjusters commute with positive scaling") {
  Rng rng(21);
  std::vector<double> y(50);
  double level = 0.0;
  for (auto& v : y) {
    level += rng.gaussian();
    v = level + 2.0;
  }
  std::vector<double> y2(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) y2[t] = 2.0 * y[t];

  for (auto kind : {DeterministicKind::constant, DeterministicKind::linear_trend}) {
    const auto fd1 = fd_adjust(y, kind);
    const auto fd2 = fd_adjust(y2, kind);
    const auto ols1 = ols_adjust(y, kind);
    const auto ols2 = ols_adjust(y2, kind);
    const auto gls1 = gls_adjust(y, kind);
    const auto gls2 = gls_adjust(y2, kind);
    for (std::size_t t = 0; t < y.size(); ++t) {
      CHECK(fd2[t] == doctest::Approx(2.0 * fd1[t]).epsilon(1e-13));
      CHECK(ols2[t] == doctest::Approx(2.0 * ols1[t]).epsilon(1e-12));
      CHECK(gls2[t] == doctest::Approx(2.0 * gls1[t]).epsilon(1e-12));
    }
  }
}
