#include "alknot/detrend.hpp"

#include <Eigen/Dense>

#include "alknot/linalg.hpp"

namespace alknot {

std::string to_string(DeterministicKind kind) {
  switch (kind) {
    case DeterministicKind::none:
      return "none";
    case DeterministicKind::constant:
      return "constant";
    case DeterministicKind::linear_trend:
      return "linear_trend";
  }
  return "none";
}

DeterministicKind deterministic_kind_from_string(const std::string& name) {
  if (name == "none") return DeterministicKind::none;
  if (name == "constant" || name == "const") return DeterministicKind::constant;
  if (name == "linear_trend" || name == "trend")
    return DeterministicKind::linear_trend;
  throw std::invalid_argument("unknown deterministic kind: " + name);
}

namespace {

// z_t columns for t = 1..T; empty matrix for kind == none.
Eigen::MatrixXd deterministic_columns(std::size_t T, DeterministicKind kind) {
  const int q = kind == DeterministicKind::none       ? 0
                : kind == DeterministicKind::constant ? 1
                                                      : 2;
  Eigen::MatrixXd Z(static_cast<Eigen::Index>(T), q);
  for (std::size_t t = 0; t < T; ++t) {
    if (q >= 1) Z(static_cast<Eigen::Index>(t), 0) = 1.0;
    if (q >= 2) Z(static_cast<Eigen::Index>(t), 1) = static_cast<double>(t + 1);
  }
  return Z;
}

}  // namespace

std::vector<double> fd_adjust(std::span<const double> y, DeterministicKind kind) {
  const std::size_t T = y.size();
  if (T < 2) throw invalid_length_error("fd_adjust: series length must be >= 2");
  std::vector<double> out(y.begin(), y.end());
  if (kind == DeterministicKind::none) return out;
  const double y1 = y[0];
  if (kind == DeterministicKind::constant) {
    for (auto& v : out) v -= y1;
    return out;
  }
  const double span = y[T - 1] - y1;
  for (std::size_t t = 0; t < T; ++t) {
    out[t] = y[t] - y1 - (static_cast<double>(t + 1) / static_cast<double>(T)) * span;
  }
  return out;
}

std::vector<double> ols_adjust(std::span<const double> y, DeterministicKind kind) {
  const std::size_t T = y.size();
  if (kind == DeterministicKind::none) return {y.begin(), y.end()};
  const std::size_t q = kind == DeterministicKind::constant ? 1 : 2;
  if (T <= q)
    throw invalid_length_error("ols_adjust: need more observations than regressors");
  const Eigen::MatrixXd Z = deterministic_columns(T, kind);
  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(T));
  const Eigen::VectorXd theta = detail::lstsq(Z, yv);
  const Eigen::VectorXd resid = yv - Z * theta;
  return {resid.data(), resid.data() + resid.size()};
}

double default_gls_cbar(DeterministicKind kind) {
  return kind == DeterministicKind::linear_trend ? -13.5 : -7.0;
}

std::vector<double> gls_adjust(std::span<const double> y, DeterministicKind kind,
                               double c_bar) {
  const std::size_t T = y.size();
  if (kind == DeterministicKind::none)
    throw std::invalid_argument("gls_adjust: kind must include a deterministic term");
  if (T < 3) throw invalid_length_error("gls_adjust: series length must be >= 3");
  if (c_bar > 0.0) throw std::invalid_argument("gls_adjust: c_bar must be <= 0");

  const double a_bar = 1.0 + c_bar / static_cast<double>(T);
  const Eigen::MatrixXd Z = deterministic_columns(T, kind);
  const Eigen::Index n = static_cast<Eigen::Index>(T);

  Eigen::VectorXd y_q(n);
  Eigen::MatrixXd Z_q(n, Z.cols());
  y_q(0) = y[0];
  Z_q.row(0) = Z.row(0);
  for (Eigen::Index t = 1; t < n; ++t) {
    y_q(t) = y[static_cast<std::size_t>(t)] - a_bar * y[static_cast<std::size_t>(t - 1)];
    Z_q.row(t) = Z.row(t) - a_bar * Z.row(t - 1);
  }

  const Eigen::VectorXd theta = detail::lstsq(Z_q, y_q);
  std::vector<double> out(T);
  for (Eigen::Index t = 0; t < n; ++t) {
    out[static_cast<std::size_t>(t)] = y[static_cast<std::size_t>(t)] - Z.row(t).dot(theta);
  }
  return out;
}

}  // namespace alknot
