#include "alknot/spacing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "alknot/lars.hpp"
#include "alknot/linalg.hpp"
#include "alknot/weights.hpp"

namespace alknot {

std::string to_string(SpacingVariant variant) {
  switch (variant) {
    case SpacingVariant::plain:
      return "plain";
    case SpacingVariant::adaptive:
      return "adaptive";
    case SpacingVariant::enriched:
      return "enriched";
  }
  return "plain";
}

SpacingVariant spacing_variant_from_string(const std::string& name) {
  if (name == "plain") return SpacingVariant::plain;
  if (name == "adaptive") return SpacingVariant::adaptive;
  if (name == "enriched") return SpacingVariant::enriched;
  throw std::invalid_argument("unknown spacing variant: " + name);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper tail of the standard normal; erfc is accurate far into the tail.
double gauss_upper(double x) {
  if (x == kInf) return 0.0;
  if (x == -kInf) return 1.0;
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

}  // namespace

double truncated_gaussian_cdf(double x, double mu, double sigma2, double v_minus,
                              double v_plus) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("truncated_gaussian_cdf: sigma2 must be positive");
  if (!(v_minus < v_plus))
    throw std::invalid_argument("truncated_gaussian_cdf: need v_minus < v_plus");
  const double sigma = std::sqrt(sigma2);
  const auto z = [&](double v) {
    if (v == kInf) return kInf;
    if (v == -kInf) return -kInf;
    return (v - mu) / sigma;
  };
  // Phi(a) - Phi(b) = Q(b) - Q(a) with Q the upper tail.
  const double denom = gauss_upper(z(v_minus)) - gauss_upper(z(v_plus));
  if (denom < 1e-300)
    throw numeric_error("truncated_gaussian_cdf: truncation mass underflow");
  const double numer = gauss_upper(z(v_minus)) - gauss_upper(z(x));
  return std::clamp(numer / denom, 0.0, 1.0);
}

namespace detail {

double spacing_from_triplet(double lambda_prev, double lambda_entry,
                            double lambda_next, double nu, double sigma) {
  const double scale = nu / sigma;
  const double q_prev = gauss_upper(lambda_prev * scale);
  const double q_entry = gauss_upper(lambda_entry * scale);
  const double q_next = gauss_upper(lambda_next * scale);
  const double denom = q_next - q_prev;
  if (denom < 1e-300)
    throw numeric_error("spacing test: truncation mass underflow");
  return std::clamp((q_entry - q_prev) / denom, 0.0, 1.0);
}

}  // namespace detail

namespace {

SpacingResult spacing_impl(std::span<const double> y, int p,
                           DeterministicKind detrending, SpacingVariant variant,
                           double gamma1, double gamma2, double alpha, int R,
                           Rng* rng, std::optional<double> j_value);

}  // namespace

SpacingResult spacing_pvalue(std::span<const double> y, int p,
                             DeterministicKind detrending, SpacingVariant variant,
                             double gamma1, double gamma2, double alpha, int R,
                             Rng* rng) {
  return spacing_impl(y, p, detrending, variant, gamma1, gamma2, alpha, R, rng,
                      std::nullopt);
}

SpacingResult spacing_pvalue_with_j(std::span<const double> y, int p,
                                    DeterministicKind detrending, double j_value,
                                    double gamma1, double gamma2) {
  return spacing_impl(y, p, detrending, SpacingVariant::enriched, gamma1, gamma2,
                      0.0, 0, nullptr, j_value);
}

namespace {

SpacingResult spacing_impl(std::span<const double> y, int p,
                           DeterministicKind detrending, SpacingVariant variant,
                           double gamma1, double gamma2, double alpha, int R,
                           Rng* rng, std::optional<double> j_value) {
  SpacingResult res;
  res.variant = variant;

  const std::vector<double> adj = fd_adjust(y, detrending);
  const AdfDesign design = build_design(adj, p);
  const OlsFit fit = ols_fit(design);
  const double sigma = std::sqrt(fit.sigma2_hat);

  Eigen::VectorXd scale = Eigen::VectorXd::Ones(p + 1);
  if (variant != SpacingVariant::plain) {
    PenaltyWeights w;
    if (variant == SpacingVariant::enriched) {
      double j = 0.0;
      if (j_value) {
        j = *j_value;
      } else if (rng != nullptr) {
        j = j_alpha(y, detrending, alpha, R, kEnrichmentLrvLag, *rng);
      } else {
        throw std::invalid_argument(
            "spacing_pvalue: enriched variant needs an rng or a J value");
      }
      w = enriched_weights(fit, j, gamma1, gamma2);
    } else {
      w = ols_weights(fit, gamma1, gamma2);
    }
    scale = column_scales(w);
  }

  if (scale(0) == 0.0) {
    res.degenerate = true;
    res.p_value = 1.0;
    return res;
  }

  const SolutionPath path = lars_path(design.X, design.response, scale, PathMode::lar);

  // Entry step of the level column (LAR mode: activations only).
  int entry = -1;
  for (std::size_t l = 0; l < path.events.size(); ++l) {
    if (path.events[l].variable == 0 && path.events[l].activate) {
      entry = static_cast<int>(l);
      break;
    }
  }
  if (entry < 0) {
    res.degenerate = true;
    res.p_value = 1.0;
    return res;
  }

  res.step = entry + 1;
  res.lambda_prev = entry == 0 ? kInf : path.knots[static_cast<std::size_t>(entry - 1)];
  res.lambda_entry = path.knots[static_cast<std::size_t>(entry)];
  res.lambda_next = entry + 1 < static_cast<int>(path.knots.size())
                        ? path.knots[static_cast<std::size_t>(entry + 1)]
                        : 0.0;

  // nu_l = || (X_Al^+)' s_Al - (X_Al-1^+)' s_Al-1 ||_2 on the scaled columns,
  // with the empty-set convention for step 1.
  const auto projected_sign_vec = [&](const PathSegment& seg) -> Eigen::VectorXd {
    const auto m = static_cast<Eigen::Index>(seg.active.size());
    Eigen::MatrixXd Xa(design.X.rows(), m);
    Eigen::VectorXd s(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const int var = seg.active[static_cast<std::size_t>(i)];
      Xa.col(i) = scale(var) * design.X.col(var);
      s(i) = static_cast<double>(seg.signs[static_cast<std::size_t>(i)]);
    }
    return Xa * (Xa.transpose() * Xa).ldlt().solve(s);
  };

  Eigen::VectorXd current = projected_sign_vec(path.segments[static_cast<std::size_t>(entry)]);
  Eigen::VectorXd previous = Eigen::VectorXd::Zero(design.X.rows());
  if (entry > 0)
    previous = projected_sign_vec(path.segments[static_cast<std::size_t>(entry - 1)]);
  res.nu = (current - previous).norm();

  res.p_value = detail::spacing_from_triplet(res.lambda_prev, res.lambda_entry,
                                             res.lambda_next, res.nu, sigma);
  return res;
}

}  // namespace

}  // namespace alknot
