#include "alknot/dgp.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace alknot {

std::vector<double> gen_arma_near_ur(int T, double c, double phi, double theta,
                                     Rng& rng, int burn_in) {
  if (c > 0.0) throw std::invalid_argument("gen_arma_near_ur: c must be <= 0");
  if (std::abs(phi) >= 1.0)
    throw std::invalid_argument("gen_arma_near_ur: need |phi| < 1");
  if (T < 1 || burn_in < 0)
    throw std::invalid_argument("gen_arma_near_ur: bad T or burn_in");

  const double rho = 1.0 + c / static_cast<double>(T);
  double v = 0.0, e_prev = 0.0, y = 0.0;
  std::vector<double> out;
  out.reserve(T);
  for (int t = 0; t < T + burn_in; ++t) {
    const double e = rng.gaussian();
    v = phi * v + theta * e_prev + e;
    e_prev = e;
    y = rho * y + v;
    if (t >= burn_in) out.push_back(y);
  }
  return out;
}

namespace {

// Level AR coefficients implied by the ADF recursion:
//   y_t = (1 + rho + d1) y_{t-1} + (d2 - d1) y_{t-2} + ... - dk y_{t-k-1}.
std::vector<double> level_ar_coefficients(double rho_star,
                                          std::span<const double> delta) {
  const int k = static_cast<int>(delta.size());
  std::vector<double> a(k + 1, 0.0);
  a[0] = 1.0 + rho_star + (k > 0 ? delta[0] : 0.0);
  for (int j = 1; j < k; ++j) a[j] = delta[j] - delta[j - 1];
  if (k > 0) a[k] = -delta[k - 1];
  return a;
}

double companion_spectral_radius(const std::vector<double>& a) {
  const int q = static_cast<int>(a.size());
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(q, q);
  for (int j = 0; j < q; ++j) C(0, j) = a[j];
  for (int i = 1; i < q; ++i) C(i, i - 1) = 1.0;
  const Eigen::VectorXcd eig = C.eigenvalues();
  double radius = 0.0;
  for (Eigen::Index i = 0; i < eig.size(); ++i)
    radius = std::max(radius, std::abs(eig(i)));
  return radius;
}

}  // namespace

std::vector<double> gen_adf_form(int T, double rho_star,
                                 std::span<const double> delta_star, Rng& rng,
                                 int burn_in) {
  if (!(rho_star > -2.0 && rho_star <= 0.0))
    throw std::invalid_argument("gen_adf_form: rho_star must lie in (-2, 0]");
  if (T < 1 || burn_in < 0)
    throw std::invalid_argument("gen_adf_form: bad T or burn_in");

  const auto a = level_ar_coefficients(rho_star, delta_star);
  const double radius = companion_spectral_radius(a);
  const double bound = rho_star == 0.0 ? 1.0 + 1e-8 : 1.0 - 1e-10;
  if (radius > bound)
    throw std::invalid_argument(
        "gen_adf_form: explosive configuration, companion spectral radius = " +
        std::to_string(radius));

  const int k = static_cast<int>(delta_star.size());
  // History of levels; k+1 zero initial values.
  std::vector<double> y(k + 1 + T + burn_in, 0.0);
  for (int t = k + 1; t < static_cast<int>(y.size()); ++t) {
    double dy = rho_star * y[t - 1] + rng.gaussian();
    for (int j = 1; j <= k; ++j) dy += delta_star[j - 1] * (y[t - j] - y[t - j - 1]);
    y[t] = y[t - 1] + dy;
  }
  return {y.end() - T, y.end()};
}

std::vector<double> add_deterministic(std::span<const double> y, double theta1,
                                      double theta2) {
  std::vector<double> out(y.size());
  for (std::size_t t = 0; t < y.size(); ++t)
    out[t] = y[t] + theta1 + theta2 * static_cast<double>(t + 1);
  return out;
}

std::vector<double> ou_path_from(std::span<const double> innovations, double c) {
  const std::size_t N = innovations.size();
  if (N < 2) throw invalid_length_error("ou_path: need at least 2 steps");
  if (c > 0.0) throw std::invalid_argument("ou_path: c must be <= 0");
  const double a = 1.0 + c / static_cast<double>(N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  std::vector<double> x(N);
  double prev = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    prev = a * prev + scale * innovations[i];
    x[i] = prev;
  }
  return x;
}

std::vector<double> ou_path(double c, int n_steps, Rng& rng) {
  if (n_steps < 2) throw invalid_length_error("ou_path: need at least 2 steps");
  if (c > 0.0) throw std::invalid_argument("ou_path: c must be <= 0");
  const double a = 1.0 + c / static_cast<double>(n_steps);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_steps));
  std::vector<double> x(static_cast<std::size_t>(n_steps));
  double prev = 0.0;
  for (auto& v : x) {
    prev = a * prev + scale * rng.gaussian();
    v = prev;
  }
  return x;
}

std::vector<double> gaussian_random_walk(int T, Rng& rng) {
  std::vector<double> y(static_cast<std::size_t>(T));
  double level = 0.0;
  for (auto& v : y) {
    level += rng.gaussian();
    v = level;
  }
  return y;
}

}  // namespace alknot
