#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "alknot/dgp.hpp"
#include "alknot/lars.hpp"
#include "alknot/rng.hpp"
#include "support/cd_oracle.hpp"

using namespace alknot;

namespace {

AdfDesign random_design(int n, int p, Rng& rng) {
  AdfDesign d;
  d.p = p;
  d.T = n + p + 1;
  d.X.resize(n, p + 1);
  d.response.resize(n);
  for (int i = 0; i < n; ++i) {
    d.response(i) = rng.gaussian();
    for (int j = 0; j <= p; ++j) d.X(i, j) = rng.gaussian();
  }
  return d;
}

PenaltyWeights random_weights(int p, Rng& rng) {
  PenaltyWeights w;
  w.w1 = 0.25 + 2.0 * rng.uniform();
  w.w2.resize(p);
  for (int j = 0; j < p; ++j) w.w2(j) = 0.25 + 2.0 * rng.uniform();
  return w;
}

// KKT conditions of the 2-lambda objective at an interior lambda.
void check_kkt(const AdfDesign& d, const PenaltyWeights& w, const SolutionPath& path,
               double lambda, double rel_tol = 1e-8) {
  const Eigen::VectorXd beta = coefficients_at(path, lambda);
  const Eigen::VectorXd scale = column_scales(w);
  const Eigen::VectorXd resid = d.response - d.X * beta;
  for (int j = 0; j <= d.p; ++j) {
    if (scale(j) == 0.0) {
      CHECK(beta(j) == 0.0);
      continue;
    }
    const double corr = scale(j) * d.X.col(j).dot(resid);
    if (std::abs(beta(j)) > 1e-11) {
      CHECK(std::abs(corr - lambda * ((beta(j) > 0) - (beta(j) < 0))) <=
            rel_tol * std::max(1.0, lambda));
    } else {
      CHECK(std::abs(corr) <= lambda * (1.0 + rel_tol) + rel_tol);
    }
  }
}

}  // namespace

TEST_CASE("single regressor: one knot at |x'y| with a linear segment") {
  Rng rng(2);
  AdfDesign d = random_design(30, 0, rng);
  PenaltyWeights w;
  w.w1 = 1.0;
  w.w2.resize(0);
  const SolutionPath path = compute_path(d, w, PathMode::lasso);
  REQUIRE(path.knots.size() == 1);
  const double expected = std::abs(d.X.col(0).dot(d.response));
  CHECK(path.knots[0] == doctest::Approx(expected).epsilon(1e-12));

  // Zero at the knot, OLS at lambda = 0, linear midway.
  CHECK(coefficients_at(path, path.knots[0])(0) == doctest::Approx(0.0));
  const double ols = d.X.col(0).dot(d.response) / d.X.col(0).squaredNorm();
  CHECK(coefficients_at(path, 0.0)(0) == doctest::Approx(ols).epsilon(1e-12));
  const double mid = coefficients_at(path, path.knots[0] / 2.0)(0);
  CHECK(mid == doctest::Approx(ols / 2.0).epsilon(1e-12));
  CHECK(coefficients_at(path, 2.0 * path.knots[0])(0) == 0.0);
}

TEST_CASE("orthonormal weighted design: knots are sorted correlations, "
          "solutions are soft thresholds") {
  const int n = 16;
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, 3);
  X(0, 0) = X(1, 1) = X(2, 2) = 1.0;  // orthonormal columns
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  y(0) = 3.0;
  y(1) = -1.5;
  y(2) = 0.5;
  const Eigen::VectorXd scale = Eigen::VectorXd::Ones(3);
  const SolutionPath path = lars_path(X, y, scale, PathMode::lasso);
  REQUIRE(path.knots.size() == 3);
  CHECK(path.knots[0] == doctest::Approx(3.0));
  CHECK(path.knots[1] == doctest::Approx(1.5));
  CHECK(path.knots[2] == doctest::Approx(0.5));
  CHECK(path.events[0].variable == 0);
  CHECK(path.events[1].variable == 1);
  CHECK(path.events[2].variable == 2);
  for (double lambda : {0.25, 0.75, 2.0}) {
    const Eigen::VectorXd beta = coefficients_at(path, lambda);
    CHECK(beta(0) == doctest::Approx(std::max(0.0, 3.0 - lambda)).epsilon(1e-12));
    CHECK(beta(1) ==
          doctest::Approx(std::min(0.0, -1.5 + lambda)).epsilon(1e-12));
    CHECK(beta(2) == doctest::Approx(std::max(0.0, 0.5 - lambda)).epsilon(1e-12));
  }
  // LAR and Lasso agree when no sign change occurs.
  const SolutionPath lar = lars_path(X, y, scale, PathMode::lar);
  REQUIRE(lar.knots.size() == 3);
  for (std::size_t l = 0; l < 3; ++l)
    CHECK(lar.knots[l] == doctest::Approx(path.knots[l]).epsilon(1e-12));
}

TEST_CASE("lasso path matches the coordinate-descent oracle (random instances)") {
  Rng rng(404);
  for (int instance = 0; instance < 12; ++instance) {
    const int p = 1 + static_cast<int>(rng.uniform() * 6);
    const int n = 25 + static_cast<int>(rng.uniform() * 20);
    const AdfDesign d = random_design(n, p, rng);
    const PenaltyWeights w = random_weights(p, rng);
    const SolutionPath path = compute_path(d, w, PathMode::lasso);
    REQUIRE(!path.knots.empty());

    Eigen::VectorXd v(p + 1);
    v(0) = std::pow(w.w1, w.gamma1);
    for (int j = 0; j < p; ++j) v(j + 1) = std::pow(w.w2(j), w.gamma2);

    for (int q = 0; q < 6; ++q) {
      const double lambda = path.knots[0] * rng.uniform();
      const Eigen::VectorXd ours = coefficients_at(path, lambda);
      const Eigen::VectorXd oracle =
          alknot_test::cd_lasso(d.X, d.response, v, lambda);
      CHECK((ours - oracle).lpNorm<Eigen::Infinity>() <= 1e-6);
    }
  }
}

TEST_CASE("KKT conditions hold along random lasso paths") {
  Rng rng(777);
  for (int instance = 0; instance < 8; ++instance) {
    const int p = 2 + static_cast<int>(rng.uniform() * 5);
    const AdfDesign d = random_design(40, p, rng);
    const PenaltyWeights w = random_weights(p, rng);
    const SolutionPath path = compute_path(d, w, PathMode::lasso);
    for (int q = 0; q < 50; ++q) {
      const double lambda = path.knots[0] * rng.uniform();
      check_kkt(d, w, path, lambda);
    }
  }
}

TEST_CASE("infinite weights exclude columns") {
  Rng rng(11);
  AdfDesign d = random_design(30, 2, rng);
  PenaltyWeights w = random_weights(2, rng);
  w.w2(1) = std::numeric_limits<double>::infinity();
  const SolutionPath path = compute_path(d, w, PathMode::lasso);
  CHECK(!activation_knot(path, 2).has_value());
  for (double lambda : {0.0, 0.5 * path.knots[0]}) {
    CHECK(coefficients_at(path, lambda)(2) == 0.0);
  }
  // All-infinite weights are rejected.
  PenaltyWeights all_inf = w;
  all_inf.w1 = std::numeric_limits<double>::infinity();
  all_inf.w2(0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((void)compute_path(d, all_inf, PathMode::lasso),
                  std::invalid_argument);
}

TEST_CASE("rank-deficient weighted design raises, negative lambda rejected") {
  Rng rng(14);
  AdfDesign d = random_design(30, 2, rng);
  d.X.col(2) = 0.5 * d.X.col(1);
  PenaltyWeights w = random_weights(2, rng);
  CHECK_THROWS_AS((void)compute_path(d, w, PathMode::lasso), numeric_error);

  AdfDesign ok = random_design(30, 1, rng);
  PenaltyWeights w1 = random_weights(1, rng);
  const SolutionPath path = compute_path(ok, w1, PathMode::lasso);
  CHECK_THROWS_AS((void)coefficients_at(path, -0.1), std::invalid_argument);
}

TEST_CASE("continuity across knots") {
  Rng rng(37);
  const AdfDesign d = random_design(45, 5, rng);
  const PenaltyWeights w = random_weights(5, rng);
  const SolutionPath path = compute_path(d, w, PathMode::lasso);
  for (double knot : path.knots) {
    const Eigen::VectorXd at = coefficients_at(path, knot);
    const Eigen::VectorXd above = coefficients_at(path, knot * (1.0 + 1e-9));
    const Eigen::VectorXd below = coefficients_at(path, knot * (1.0 - 1e-9));
    CHECK((at - above).lpNorm<Eigen::Infinity>() <= 1e-6);
    CHECK((at - below).lpNorm<Eigen::Infinity>() <= 1e-6);
  }
}

TEST_CASE("path equivariance under y -> a y") {
  Rng rng(88);
  const std::vector<double> y = gaussian_random_walk(70, rng);
  std::vector<double> y2(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) y2[t] = 2.0 * y[t];

  const AdfDesign d1 = build_design(y, 3);
  const AdfDesign d2 = build_design(y2, 3);
  const OlsFit f1 = ols_fit(d1);
  const OlsFit f2 = ols_fit(d2);
  const SolutionPath p1 = compute_path(d1, ols_weights(f1), PathMode::lasso);
  const SolutionPath p2 = compute_path(d2, ols_weights(f2), PathMode::lasso);

  REQUIRE(p1.knots.size() == p2.knots.size());
  for (std::size_t l = 0; l < p1.knots.size(); ++l) {
    CHECK(p2.knots[l] == doctest::Approx(4.0 * p1.knots[l]).epsilon(1e-12));
    CHECK(p2.events[l].variable == p1.events[l].variable);
    CHECK(p2.events[l].activate == p1.events[l].activate);
  }
  // Both the response and the regressors are built from y, so the
  // coefficients are scale-free ratios: beta(a^2 lambda) is unchanged.
  for (double frac : {0.9, 0.5, 0.1}) {
    const double lambda = frac * p1.knots[0];
    const Eigen::VectorXd b1 = coefficients_at(p1, lambda);
    const Eigen::VectorXd b2 = coefficients_at(p2, 4.0 * lambda);
    for (int j = 0; j <= 3; ++j)
      CHECK(b2(j) == doctest::Approx(b1(j)).epsilon(1e-11));
  }
}

TEST_CASE("activation_knot ignores later re-entries after a drop") {
  // Scan many random instances until a drop occurs, then check the reported
  // knot is the first activation.
  Rng rng(3131);
  bool saw_drop = false;
  for (int instance = 0; instance < 400 && !saw_drop; ++instance) {
    const int p = 3 + static_cast<int>(rng.uniform() * 4);
    const AdfDesign d = random_design(30, p, rng);
    const PenaltyWeights w = random_weights(p, rng);
    const SolutionPath path = compute_path(d, w, PathMode::lasso);
    for (std::size_t l = 0; l < path.events.size(); ++l) {
      if (path.events[l].activate) continue;
      saw_drop = true;
      const int var = path.events[l].variable;
      // First activation of this variable precedes the drop.
      std::size_t first_act = 0;
      while (path.events[first_act].variable != var ||
             !path.events[first_act].activate)
        ++first_act;
      REQUIRE(first_act < l);
      const auto knot = activation_knot(path, var);
      REQUIRE(knot.has_value());
      CHECK(*knot == doctest::Approx(path.knots[first_act]));
    }
  }
  CHECK(saw_drop);  // drops do occur on random instances
}

TEST_CASE("knot count is at least p+1 absent drops") {
  Rng rng(99);
  const AdfDesign d = random_design(50, 4, rng);
  const PenaltyWeights w = random_weights(4, rng);
  const SolutionPath path = compute_path(d, w, PathMode::lasso);
  std::size_t drops = 0;
  for (const auto& e : path.events) drops += !e.activate;
  CHECK(path.knots.size() >= 5 + drops);  // at least p+1 activations
  CHECK(std::is_sorted(path.knots.rbegin(), path.knots.rend()));
  CHECK(path.knots.back() > 0.0);
}

TEST_CASE("bic_tune: pure-noise response keeps the empty model") {
  Rng rng(555);
  // Strong penalty path: response independent of all columns, n large.
  AdfDesign d = random_design(200, 3, rng);
  PenaltyWeights w;
  w.w1 = 1.0;
  w.w2 = Eigen::VectorXd::Ones(3);
  const SolutionPath path = compute_path(d, w, PathMode::lasso);
  const BicSelection sel = bic_tune(path, d);

  // Independent brute-force scan over the same candidates.
  std::vector<double> lambdas = path.knots;
  lambdas.push_back(0.0);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_active = 0;
  const double n = static_cast<double>(d.n());
  for (double lambda : lambdas) {
    const Eigen::VectorXd beta = coefficients_at(path, lambda);
    const double rss = (d.response - d.X * beta).squaredNorm();
    int k = 0;
    for (int j = 0; j < 4; ++j) k += std::abs(beta(j)) > 1e-12;
    const double bic = n * std::log(rss / n) + k * std::log(n);
    if (bic < best) {
      best = bic;
      best_active = static_cast<std::size_t>(k);
    }
  }
  CHECK(sel.active.size() == best_active);
  CHECK(sel.bic == doctest::Approx(best));
  CHECK(sel.active.empty());  // noise response: BIC keeps nothing
}

TEST_CASE("bic_tune: one-knot path compares empty and full models") {
  Rng rng(42);
  const AdfDesign d = random_design(40, 0, rng);
  PenaltyWeights w;
  w.w1 = 1.0;
  w.w2.resize(0);
  const SolutionPath path = compute_path(d, w, PathMode::lasso);
  REQUIRE(path.knots.size() == 1);
  const BicSelection sel = bic_tune(path, d);
  CHECK((sel.active.empty() || sel.active == std::vector<int>{0}));
}
