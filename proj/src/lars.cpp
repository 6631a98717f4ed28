#include "alknot/lars.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "alknot/linalg.hpp"

namespace alknot {

namespace {

constexpr double kSlopeTol = 1e-12;

struct HomotopyState {
  std::vector<int> active;  // indices into the included-column set
  std::vector<int> signs;
};

// Gram-domain quantities for the current active set.
struct SegmentSolve {
  Eigen::VectorXd beta_ls;  // unpenalized fit on the active set
  Eigen::VectorXd dir;      // d = (Xa'Xa)^-1 s
};

SegmentSolve solve_active(const Eigen::MatrixXd& gram, const Eigen::VectorXd& xty,
                          const HomotopyState& st) {
  const auto m = static_cast<Eigen::Index>(st.active.size());
  Eigen::MatrixXd G(m, m);
  Eigen::VectorXd r(m), s(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    r(i) = xty(st.active[i]);
    s(i) = static_cast<double>(st.signs[i]);
    for (Eigen::Index j = 0; j < m; ++j) G(i, j) = gram(st.active[i], st.active[j]);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success)
    throw numeric_error("lars_path: active-set Gram matrix is singular");
  SegmentSolve sol;
  sol.beta_ls = ldlt.solve(r);
  sol.dir = ldlt.solve(s);
  return sol;
}

}  // namespace

Eigen::VectorXd column_scales(const PenaltyWeights& weights) {
  Eigen::VectorXd scale(weights.w2.size() + 1);
  scale(0) = std::isinf(weights.w1) ? 0.0 : std::pow(weights.w1, -weights.gamma1);
  for (Eigen::Index j = 0; j < weights.w2.size(); ++j) {
    scale(j + 1) =
        std::isinf(weights.w2(j)) ? 0.0 : std::pow(weights.w2(j), -weights.gamma2);
  }
  return scale;
}

SolutionPath lars_path(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& column_scale, PathMode mode) {
  const int n_vars = static_cast<int>(X.cols());
  if (column_scale.size() != X.cols())
    throw std::invalid_argument("lars_path: column_scale size mismatch");

  std::vector<int> included;  // original indices of finite-weight columns
  for (int j = 0; j < n_vars; ++j) {
    if (column_scale(j) > 0.0) included.push_back(j);
  }
  if (included.empty())
    throw std::invalid_argument("lars_path: no column has a finite weight");

  const auto m = static_cast<Eigen::Index>(included.size());
  Eigen::MatrixXd Xs(X.rows(), m);
  for (Eigen::Index j = 0; j < m; ++j)
    Xs.col(j) = column_scale(included[j]) * X.col(included[j]);

  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
    qr.setThreshold(detail::kRankTolerance);
    if (qr.rank() < m)
      throw numeric_error("lars_path: weighted design is rank deficient");
  }

  const Eigen::MatrixXd gram = Xs.transpose() * Xs;
  const Eigen::VectorXd xty = Xs.transpose() * y;

  SolutionPath path;
  path.mode = mode;
  path.column_scale = column_scale;
  path.n_vars = n_vars;
  path.n_obs = X.rows();

  // First knot: largest absolute correlation; ties go to the smaller index.
  double lambda1 = 0.0;
  int first = -1;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double a = std::abs(xty(j));
    if (a > lambda1) {
      lambda1 = a;
      first = static_cast<int>(j);
    }
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (static_cast<int>(j) == first) continue;
    if (std::abs(std::abs(xty(j)) - lambda1) <= 1e-12 * lambda1) {
      std::fprintf(stderr, "alknot: simultaneous activation tie at lambda=%g\n",
                   lambda1);
      if (static_cast<int>(j) < first) first = static_cast<int>(j);
    }
  }
  if (first < 0 || lambda1 <= 0.0) {
    // y orthogonal to every included column: beta == 0 on all of [0, inf).
    PathSegment seg;
    seg.lambda_hi = 0.0;
    seg.lambda_lo = 0.0;
    seg.offset = Eigen::VectorXd::Zero(n_vars);
    seg.slope = Eigen::VectorXd::Zero(n_vars);
    path.segments.push_back(std::move(seg));
    return path;
  }

  HomotopyState st;
  st.active.push_back(first);
  st.signs.push_back(xty(first) > 0.0 ? 1 : -1);
  path.knots.push_back(lambda1);
  path.events.push_back({included[first], true});

  const double tol = 1e-12 * lambda1;
  double lambda_cur = lambda1;
  const int max_steps = 50 * n_vars + 20;

  for (int step = 0; step < max_steps; ++step) {
    const SegmentSolve sol = solve_active(gram, xty, st);

    std::vector<char> is_active(m, 0);
    for (int a : st.active) is_active[a] = 1;

    // Next activation: for inactive j, c_j(lambda) = a_j + lambda b_j meets
    // +lambda or -lambda from inside.
    double lambda_act = -1.0;
    int act_var = -1, act_sign = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (is_active[j]) continue;
      double gj_beta = 0.0, gj_dir = 0.0;
      for (std::size_t i = 0; i < st.active.size(); ++i) {
        gj_beta += gram(j, st.active[i]) * sol.beta_ls(static_cast<Eigen::Index>(i));
        gj_dir += gram(j, st.active[i]) * sol.dir(static_cast<Eigen::Index>(i));
      }
      const double aj = xty(j) - gj_beta;
      const double bj = gj_dir;
      const double cand_pos = (1.0 - bj) != 0.0 ? aj / (1.0 - bj) : -1.0;
      const double cand_neg = (1.0 + bj) != 0.0 ? -aj / (1.0 + bj) : -1.0;
      for (int which = 0; which < 2; ++which) {
        const double cand = which == 0 ? cand_pos : cand_neg;
        if (!(cand > tol && cand < lambda_cur * (1.0 - 1e-12))) continue;
        if (act_var >= 0 && std::abs(cand - lambda_act) <= 1e-12 * lambda_act) {
          // Measure-zero tie: keep the smaller column index.
          std::fprintf(stderr,
                       "alknot: simultaneous activation tie at lambda=%g\n", cand);
          if (static_cast<int>(j) < act_var) {
            act_var = static_cast<int>(j);
            act_sign = which == 0 ? 1 : -1;
          }
        } else if (cand > lambda_act) {
          lambda_act = cand;
          act_var = static_cast<int>(j);
          act_sign = which == 0 ? 1 : -1;
        }
      }
    }

    // Next drop (lasso mode): active coefficient crossing zero.
    double lambda_drop = -1.0;
    int drop_pos = -1;
    if (mode == PathMode::lasso) {
      for (std::size_t i = 0; i < st.active.size(); ++i) {
        const double di = sol.dir(static_cast<Eigen::Index>(i));
        if (di == 0.0) continue;
        const double cand = sol.beta_ls(static_cast<Eigen::Index>(i)) / di;
        if (cand > tol && cand < lambda_cur * (1.0 - 1e-12) && cand > lambda_drop) {
          lambda_drop = cand;
          drop_pos = static_cast<int>(i);
        }
      }
    }

    const bool have_act = act_var >= 0;
    const bool have_drop = drop_pos >= 0;
    double lambda_next = 0.0;
    enum { none, act, drop } ev = none;
    if (have_act && (!have_drop || lambda_act > lambda_drop)) {
      ev = act;
      lambda_next = lambda_act;
    } else if (have_drop) {
      ev = drop;
      lambda_next = lambda_drop;
    }

    // Close the current segment [lambda_next, lambda_cur).
    PathSegment seg;
    seg.lambda_hi = lambda_cur;
    seg.lambda_lo = ev == none ? 0.0 : lambda_next;
    seg.offset = Eigen::VectorXd::Zero(n_vars);
    seg.slope = Eigen::VectorXd::Zero(n_vars);
    for (std::size_t i = 0; i < st.active.size(); ++i) {
      const int orig = included[st.active[i]];
      const double sc = column_scale(orig);
      seg.offset(orig) = sc * sol.beta_ls(static_cast<Eigen::Index>(i));
      seg.slope(orig) = sc * sol.dir(static_cast<Eigen::Index>(i));
      seg.active.push_back(orig);
      seg.signs.push_back(st.signs[i]);
    }
    path.segments.push_back(std::move(seg));

    if (ev == none) return path;

    path.knots.push_back(lambda_next);
    if (ev == act) {
      path.events.push_back({included[act_var], true});
      st.active.push_back(act_var);
      st.signs.push_back(act_sign);
    } else {
      path.events.push_back({included[st.active[static_cast<std::size_t>(drop_pos)]],
                             false});
      st.active.erase(st.active.begin() + drop_pos);
      st.signs.erase(st.signs.begin() + drop_pos);
      if (st.active.empty()) {
        // All variables left the model; restart from the largest remaining
        // correlation below the current knot. This cannot happen on a
        // full-rank design but is guarded for safety.
        throw numeric_error("lars_path: active set emptied mid-path");
      }
    }
    lambda_cur = lambda_next;
  }
  throw numeric_error("lars_path: event limit exceeded (cycling?)");
}

SolutionPath compute_path(const AdfDesign& design, const PenaltyWeights& weights,
                          PathMode mode) {
  if (weights.w2.size() != design.p)
    throw std::invalid_argument("compute_path: weight/lag dimension mismatch");
  return lars_path(design.X, design.response, column_scales(weights), mode);
}

Eigen::VectorXd coefficients_at(const SolutionPath& path, double lambda) {
  if (lambda < 0.0)
    throw std::invalid_argument("coefficients_at: lambda must be >= 0");
  if (path.knots.empty() || lambda >= path.knots.front())
    return Eigen::VectorXd::Zero(path.n_vars);
  // Find the segment whose interval contains lambda; knots are decreasing.
  std::size_t idx = path.segments.size() - 1;
  for (std::size_t l = 0; l < path.segments.size(); ++l) {
    if (lambda <= path.segments[l].lambda_hi && lambda >= path.segments[l].lambda_lo) {
      idx = l;
      break;
    }
  }
  const PathSegment& seg = path.segments[idx];
  return seg.offset - lambda * seg.slope;
}

std::optional<double> activation_knot(const SolutionPath& path, int variable) {
  for (std::size_t l = 0; l < path.events.size(); ++l) {
    const PathEvent& e = path.events[l];
    if (e.variable != variable || !e.activate) continue;
    // Definition of an activation requires a nonzero leftward derivative.
    if (l < path.segments.size() &&
        std::abs(path.segments[l].slope(variable)) <= kSlopeTol)
      continue;
    return path.knots[l];
  }
  return std::nullopt;
}

BicSelection bic_tune(const SolutionPath& path, const AdfDesign& design) {
  const double n = static_cast<double>(design.n());
  std::vector<double> lambdas = path.knots;
  lambdas.push_back(0.0);

  BicSelection best;
  bool have_best = false;
  for (double lambda : lambdas) {
    const Eigen::VectorXd beta = coefficients_at(path, lambda);
    const double rss = (design.response - design.X * beta).squaredNorm();
    if (rss <= 1e-24 * std::max(1.0, design.response.squaredNorm()))
      throw degenerate_error("bic_tune: zero residual sum of squares");
    int k = 0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      if (std::abs(beta(j)) > kSlopeTol) ++k;
    }
    const double bic = n * std::log(rss / n) + k * std::log(n);
    if (!have_best || bic < best.bic) {  // ties keep the earlier (larger) lambda
      best.lambda = lambda;
      best.coefficients = beta;
      best.bic = bic;
      best.active.clear();
      for (Eigen::Index j = 0; j < beta.size(); ++j) {
        if (std::abs(beta(j)) > kSlopeTol) best.active.push_back(static_cast<int>(j));
      }
      have_best = true;
    }
  }
  return best;
}

}  // namespace alknot
