#include "alknot/classical.hpp"

#include <algorithm>
#include <cmath>

#include "alknot/adf.hpp"
#include "alknot/dgp.hpp"
#include "alknot/lag_select.hpp"
#include "alknot/linalg.hpp"
#include "alknot/parallel.hpp"
#include "alknot/weights.hpp"

namespace alknot {

std::string to_string(ClassicalTest test) {
  switch (test) {
    case ClassicalTest::adf_gls:
      return "adf_gls";
    case ClassicalTest::mz_t:
      return "mz_t";
    case ClassicalTest::j_alpha:
      return "j_alpha";
  }
  return "adf_gls";
}

namespace {

std::vector<double> gls_or_identity(std::span<const double> y,
                                    DeterministicKind kind) {
  if (kind == DeterministicKind::none) return {y.begin(), y.end()};
  return gls_adjust(y, kind);
}

int resolve_lag(std::span<const double> y_d, std::optional<int> k) {
  if (k) {
    if (*k < 0) throw std::invalid_argument("classical test: lag must be >= 0");
    return *k;
  }
  return select_lag(y_d).k_hat;
}

}  // namespace

ClassicalTestResult adf_gls(std::span<const double> y, DeterministicKind kind,
                            std::optional<int> k) {
  const int T = static_cast<int>(y.size());
  const std::vector<double> y_d = gls_or_identity(y, kind);
  const int lag = resolve_lag(y_d, k);
  if (T < lag + 10)
    throw invalid_length_error("adf_gls: need T >= k + 10");

  const AdfDesign design = build_design(y_d, lag);
  const OlsFit fit = ols_fit(design);

  ClassicalTestResult res;
  res.test = ClassicalTest::adf_gls;
  res.tail = ClassicalTestResult::Tail::left;
  res.statistic = fit.t_ratios(0);
  res.lag = lag;
  res.lrv = ar_lrv(y_d, lag);
  return res;
}

namespace detail {

double mz_t_from_adjusted(std::span<const double> y_d, double omega2) {
  const auto T = static_cast<double>(y_d.size());
  // Lagged-level sum over t = 1..T with y^d_0 := 0.
  double sum_sq = 0.0;
  for (std::size_t i = 0; i + 1 < y_d.size(); ++i) sum_sq += y_d[i] * y_d[i];
  const double last = y_d.back();
  const double mz_alpha =
      (last * last / T - omega2) / (2.0 * sum_sq / (T * T));
  const double msb = std::sqrt(sum_sq / (T * T) / omega2);
  return mz_alpha * msb;
}

}  // namespace detail

ClassicalTestResult mz_t(std::span<const double> y, DeterministicKind kind,
                         std::optional<int> k) {
  const int T = static_cast<int>(y.size());
  const std::vector<double> y_d = gls_or_identity(y, kind);
  const int lag = resolve_lag(y_d, k);
  if (T < lag + 10) throw invalid_length_error("mz_t: need T >= k + 10");

  ClassicalTestResult res;
  res.test = ClassicalTest::mz_t;
  res.tail = ClassicalTestResult::Tail::left;
  res.lag = lag;
  res.lrv = ar_lrv(y_d, lag);
  res.statistic = detail::mz_t_from_adjusted(y_d, res.lrv);
  return res;
}

ClassicalTestResult j_alpha_test(std::span<const double> y, DeterministicKind kind,
                                 double alpha, int R, Rng& rng) {
  const std::vector<double> adjusted = ols_adjust(y, kind);
  const int lag = select_lag(adjusted).k_hat;

  ClassicalTestResult res;
  res.test = ClassicalTest::j_alpha;
  res.tail = ClassicalTestResult::Tail::left;
  res.lag = lag;
  res.lrv = ar_lrv(adjusted, lag);
  res.statistic = j_alpha(y, kind, alpha, R, lag, rng);
  return res;
}

std::vector<double> simulate_classical_null(ClassicalTest test,
                                            DeterministicKind kind, int T,
                                            std::size_t replications,
                                            std::uint64_t seed, int threads,
                                            double alpha, int R) {
  std::vector<double> draws(replications);
  detail::parallel_for(replications, threads, [&](std::size_t r) {
    Rng rng = Rng::substream(seed, r);
    const std::vector<double> y = gaussian_random_walk(T, rng);
    switch (test) {
      case ClassicalTest::adf_gls:
        draws[r] = adf_gls(y, kind).statistic;
        break;
      case ClassicalTest::mz_t:
        draws[r] = mz_t(y, kind).statistic;
        break;
      case ClassicalTest::j_alpha:
        draws[r] = j_alpha_test(y, kind, alpha, R, rng).statistic;
        break;
    }
  });
  std::sort(draws.begin(), draws.end());
  return draws;
}

double p_value_left(double statistic, std::span<const double> sorted_null) {
  if (sorted_null.empty())
    throw invalid_length_error("p_value_left: empty null draws");
  const auto it =
      std::upper_bound(sorted_null.begin(), sorted_null.end(), statistic);
  const auto n_le = static_cast<std::size_t>(it - sorted_null.begin());
  return (1.0 + static_cast<double>(n_le)) /
         (static_cast<double>(sorted_null.size()) + 1.0);
}

}  // namespace alknot
