#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "alknot/adf.hpp"
#include "alknot/weights.hpp"

namespace alknot {

enum class PathMode { lar, lasso };

struct PathEvent {
  int variable = 0;      // original column index
  bool activate = true;  // false: dropped (lasso mode only)
};

/// One linear piece of the path. On [lambda_lo, lambda_hi) the coefficients
/// in original units are beta(lambda) = offset - lambda * slope; variables
/// outside `active` are exactly zero.
struct PathSegment {
  double lambda_hi = 0.0;
  double lambda_lo = 0.0;
  Eigen::VectorXd offset;
  Eigen::VectorXd slope;
  std::vector<int> active;  // original column indices
  std::vector<int> signs;   // correlation signs in the weighted problem
};

/// LARS path of the adaptively weighted l1 problem
///   min ||y - X b||^2 + 2 lambda ( w1^g1 |b_1| + sum_j w2_j^g2 |b_{1+j}| ).
/// Internally standard LARS runs on the scaled columns x_j * w_j^-gamma and
/// coefficients are reported in original units. With the 2-lambda penalty
/// convention the knots equal the raw absolute weighted correlations
/// |x~_j' r|; there is no hidden factor 2.
struct SolutionPath {
  PathMode mode = PathMode::lasso;
  std::vector<double> knots;       // strictly decreasing, positive
  std::vector<PathEvent> events;   // one per knot
  std::vector<PathSegment> segments;
  Eigen::VectorXd column_scale;    // w_j^-gamma per column; 0 = excluded
  int n_vars = 0;
  Eigen::Index n_obs = 0;
};

/// Generic entry point: column_scale holds w_j^-gamma (0 excludes a column).
[[nodiscard]] SolutionPath lars_path(const Eigen::MatrixXd& X,
                                     const Eigen::VectorXd& y,
                                     const Eigen::VectorXd& column_scale,
                                     PathMode mode);

[[nodiscard]] SolutionPath compute_path(const AdfDesign& design,
                                        const PenaltyWeights& weights,
                                        PathMode mode);

/// Coefficients (original units) at penalty lambda >= 0. lambda = 0 returns
/// the least-squares fit on the finite-weight support.
[[nodiscard]] Eigen::VectorXd coefficients_at(const SolutionPath& path,
                                              double lambda);

/// Earliest (largest-lambda) activation knot of a variable, or nullopt if it
/// never activates. An activation only counts when the following segment
/// moves the coefficient with slope above 1e-12 in original units.
[[nodiscard]] std::optional<double> activation_knot(const SolutionPath& path,
                                                    int variable);

struct BicSelection {
  double lambda = 0.0;
  Eigen::VectorXd coefficients;
  std::vector<int> active;
  double bic = 0.0;
};

/// BIC(lambda) = n log(RSS/n) + |A| log(n) over all knots and lambda = 0;
/// ties resolve to the larger lambda.
[[nodiscard]] BicSelection bic_tune(const SolutionPath& path,
                                    const AdfDesign& design);

/// Scale factors w_j^-gamma for all p+1 columns (0 for infinite weights).
[[nodiscard]] Eigen::VectorXd column_scales(const PenaltyWeights& weights);

}  // namespace alknot
