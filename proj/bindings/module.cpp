#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alknot/analyze.hpp"
#include "alknot/classical.hpp"
#include "alknot/dgp.hpp"
#include "alknot/knot_tests.hpp"
#include "alknot/lag_select.hpp"
#include "alknot/lars.hpp"
#include "alknot/mc.hpp"
#include "alknot/spacing.hpp"
#include "alknot/weights.hpp"

namespace py = pybind11;
using namespace alknot;

namespace {

DeterministicKind kind_of(const std::string& name) {
  return deterministic_kind_from_string(name);
}

py::dict knot_result_dict(const KnotTestResult& r) {
  py::dict d;
  d["statistic"] = r.statistic;
  d["variant"] = to_string(r.variant);
  d["gamma1"] = r.gamma1;
  d["gamma2"] = r.gamma2;
  d["detrending"] = to_string(r.detrending);
  d["lag"] = r.lag_order;
  d["sigma2"] = r.sigma2;
  if (r.j_value) d["j_value"] = *r.j_value;
  if (r.lambda0) d["lambda0"] = *r.lambda0;
  if (r.p_value) d["p_value"] = *r.p_value;
  return d;
}

py::dict classical_result_dict(const ClassicalTestResult& r) {
  py::dict d;
  d["statistic"] = r.statistic;
  d["test"] = to_string(r.test);
  d["tail"] = r.tail == ClassicalTestResult::Tail::left ? "left" : "right";
  d["lag"] = r.lag;
  d["lrv"] = r.lrv;
  if (r.p_value) d["p_value"] = *r.p_value;
  return d;
}

py::dict null_dict(const NullDistribution& null) {
  py::dict d;
  d["draws"] = null.draws;
  d["engine"] = null.engine == NullDistribution::Engine::finite_sample
                    ? "finite_sample"
                    : "asymptotic";
  d["variant"] = to_string(null.variant);
  d["detrending"] = to_string(null.detrending);
  d["T"] = null.T;
  d["c"] = null.c;
  d["n_steps"] = null.n_steps;
  d["replications"] = null.replications;
  d["seed"] = null.seed;
  return d;
}

NullDistribution null_from_dict(const py::dict& d) {
  NullDistribution null;
  null.draws = d["draws"].cast<std::vector<double>>();
  std::sort(null.draws.begin(), null.draws.end());
  null.variant = knot_variant_from_string(d["variant"].cast<std::string>());
  null.detrending = kind_of(d["detrending"].cast<std::string>());
  null.replications = null.draws.size();
  return null;
}

}  // namespace

PYBIND11_MODULE(alknot, m) {
  m.doc() = "Unit root testing from adaptive-Lasso solution paths";

  // -- detrend -----------------------------------------------------------
  m.def(
      "fd_adjust",
      [](const std::vector<double>& y, const std::string& kind) {
        return fd_adjust(y, kind_of(kind));
      },
      py::arg("y"), py::arg("kind"),
      "First-difference adjustment: none | constant | linear_trend");
  m.def(
      "ols_adjust",
      [](const std::vector<double>& y, const std::string& kind) {
        return ols_adjust(y, kind_of(kind));
      },
      py::arg("y"), py::arg("kind"));
  m.def(
      "gls_adjust",
      [](const std::vector<double>& y, const std::string& kind,
         std::optional<double> c_bar) {
        return c_bar ? gls_adjust(y, kind_of(kind), *c_bar)
                     : gls_adjust(y, kind_of(kind));
      },
      py::arg("y"), py::arg("kind"), py::arg("c_bar") = py::none());

  // -- lag selection -------------------------------------------------------
  m.def("default_kmax", &default_kmax, py::arg("T"));
  m.def(
      "select_lag",
      [](const std::vector<double>& y_d, std::optional<int> k_max) {
        const LagSelection sel =
            k_max ? select_lag(y_d, *k_max) : select_lag(y_d);
        py::dict d;
        d["k_hat"] = sel.k_hat;
        d["k_max"] = sel.k_max;
        d["maic_values"] = sel.maic_values;
        d["lrv"] = sel.lrv;
        return d;
      },
      py::arg("y_d"), py::arg("k_max") = py::none(),
      "MAIC lag selection and AR spectral LRV on an adjusted series");
  m.def("ar_lrv",
        [](const std::vector<double>& y_d, int k) { return ar_lrv(y_d, k); },
        py::arg("y_d"), py::arg("k"));

  // -- knot tests ----------------------------------------------------------
  m.def(
      "tau",
      [](const std::vector<double>& y, int p, const std::string& detrending,
         double gamma1, double gamma2) {
        return knot_result_dict(
            tau_statistic(y, p, kind_of(detrending), gamma1, gamma2));
      },
      py::arg("y"), py::arg("p"), py::arg("detrending") = "none",
      py::arg("gamma1") = 1.0, py::arg("gamma2") = 1.0,
      "Activation-knot statistic of y_{t-1} (FD-adjusted, Lasso path)");
  m.def(
      "tau_ie",
      [](const std::vector<double>& y, int p, const std::string& detrending,
         std::uint64_t seed, double gamma1, double gamma2, double alpha, int R) {
        Rng rng(seed);
        return knot_result_dict(tau_ie_statistic(y, p, kind_of(detrending),
                                                 gamma1, gamma2, alpha, R, rng));
      },
      py::arg("y"), py::arg("p"), py::arg("detrending") = "none",
      py::arg("seed") = 1, py::arg("gamma1") = 1.0, py::arg("gamma2") = 1.0,
      py::arg("alpha") = 0.1, py::arg("R") = 150,
      "Information-enriched activation-knot statistic");
  m.def(
      "j_alpha",
      [](const std::vector<double>& y, const std::string& kind, double alpha,
         int R, int k, std::uint64_t seed) {
        Rng rng(seed);
        return j_alpha(y, kind_of(kind), alpha, R, k, rng);
      },
      py::arg("y"), py::arg("kind") = "constant", py::arg("alpha") = 0.1,
      py::arg("R") = 150, py::arg("k") = 0, py::arg("seed") = 1);

  m.def(
      "simulate_null_finite",
      [](const std::string& variant, const std::string& detrending, int T,
         std::size_t replications, std::uint64_t seed, int threads) {
        return null_dict(simulate_null_finite(knot_variant_from_string(variant),
                                              kind_of(detrending), T,
                                              replications, seed, threads));
      },
      py::arg("variant"), py::arg("detrending"), py::arg("T"),
      py::arg("replications"), py::arg("seed") = 1, py::arg("threads") = 1);
  m.def(
      "simulate_null_asymptotic",
      [](const std::string& variant, const std::string& detrending, double c,
         int n_steps, std::size_t replications, std::uint64_t seed, int threads) {
        return null_dict(simulate_null_asymptotic(
            knot_variant_from_string(variant), kind_of(detrending), c, n_steps,
            replications, seed, threads));
      },
      py::arg("variant"), py::arg("detrending"), py::arg("c"),
      py::arg("n_steps"), py::arg("replications"), py::arg("seed") = 1,
      py::arg("threads") = 1);
  m.def(
      "p_value",
      [](double statistic, const py::dict& null) {
        return p_value(statistic, null_from_dict(null));
      },
      py::arg("statistic"), py::arg("null"),
      "Right-sided add-one p-value against simulated null draws");
  m.def(
      "critical_values",
      [](const py::dict& null, const std::vector<double>& alphas) {
        return critical_values(null_from_dict(null), alphas);
      },
      py::arg("null"), py::arg("alphas"));

  // -- classical tests -------------------------------------------------
  m.def(
      "adf_gls",
      [](const std::vector<double>& y, const std::string& kind,
         std::optional<int> k) {
        return classical_result_dict(adf_gls(y, kind_of(kind), k));
      },
      py::arg("y"), py::arg("kind") = "constant", py::arg("k") = py::none());
  m.def(
      "mz_t",
      [](const std::vector<double>& y, const std::string& kind,
         std::optional<int> k) {
        return classical_result_dict(mz_t(y, kind_of(kind), k));
      },
      py::arg("y"), py::arg("kind") = "constant", py::arg("k") = py::none());
  m.def(
      "j_alpha_test",
      [](const std::vector<double>& y, const std::string& kind, double alpha,
         int R, std::uint64_t seed) {
        Rng rng(seed);
        return classical_result_dict(j_alpha_test(y, kind_of(kind), alpha, R, rng));
      },
      py::arg("y"), py::arg("kind") = "constant", py::arg("alpha") = 0.1,
      py::arg("R") = 150, py::arg("seed") = 1);

  // -- spacing -----------------------------------------------------------
  m.def(
      "spacing_pvalue",
      [](const std::vector<double>& y, int p, const std::string& detrending,
         const std::string& variant, std::uint64_t seed) {
        Rng rng(seed);
        const SpacingResult r = spacing_pvalue(
            y, p, kind_of(detrending), spacing_variant_from_string(variant), 1.0,
            1.0, 0.1, 150, &rng);
        py::dict d;
        d["p_value"] = r.p_value;
        d["step"] = r.step;
        d["nu"] = r.nu;
        d["lambda_prev"] = r.lambda_prev;
        d["lambda_entry"] = r.lambda_entry;
        d["lambda_next"] = r.lambda_next;
        d["variant"] = to_string(r.variant);
        d["degenerate"] = r.degenerate;
        return d;
      },
      py::arg("y"), py::arg("p"), py::arg("detrending") = "none",
      py::arg("variant") = "adaptive", py::arg("seed") = 1);

  // -- solution path -------------------------------------------------------
  m.def(
      "solution_path",
      [](const std::vector<double>& y, int p, const std::string& detrending,
         const std::string& mode, double gamma1, double gamma2) {
        const std::vector<double> adj = fd_adjust(y, kind_of(detrending));
        const AdfDesign design = build_design(adj, p);
        const OlsFit fit = ols_fit(design);
        const PenaltyWeights w = ols_weights(fit, gamma1, gamma2);
        const SolutionPath path = compute_path(
            design, w, mode == "lar" ? PathMode::lar : PathMode::lasso);
        py::dict d;
        d["knots"] = path.knots;
        py::list events;
        for (const PathEvent& e : path.events) {
          py::dict ev;
          ev["variable"] = e.variable;
          ev["activate"] = e.activate;
          events.append(std::move(ev));
        }
        d["events"] = std::move(events);
        const auto lam0 = activation_knot(path, 0);
        if (lam0) d["level_activation_knot"] = *lam0;
        d["sigma2"] = fit.sigma2_hat;
        return d;
      },
      py::arg("y"), py::arg("p"), py::arg("detrending") = "none",
      py::arg("mode") = "lasso", py::arg("gamma1") = 1.0, py::arg("gamma2") = 1.0,
      "Knots and activation events of the adaptive-Lasso path");

  // -- DGPs ----------------------------------------------------------------
  m.def(
      "gen_arma_near_ur",
      [](int T, double c, double phi, double theta, std::uint64_t seed,
         int burn_in) {
        Rng rng(seed);
        return gen_arma_near_ur(T, c, phi, theta, rng, burn_in);
      },
      py::arg("T"), py::arg("c") = 0.0, py::arg("phi") = 0.0,
      py::arg("theta") = 0.0, py::arg("seed") = 1, py::arg("burn_in") = 50);
  m.def(
      "gen_adf_form",
      [](int T, double rho_star, const std::vector<double>& delta_star,
         std::uint64_t seed, int burn_in) {
        Rng rng(seed);
        return gen_adf_form(T, rho_star, delta_star, rng, burn_in);
      },
      py::arg("T"), py::arg("rho_star") = 0.0,
      py::arg("delta_star") = std::vector<double>{}, py::arg("seed") = 1,
      py::arg("burn_in") = 50);
  m.def(
      "ou_path",
      [](double c, int n_steps, std::uint64_t seed) {
        Rng rng(seed);
        return ou_path(c, n_steps, rng);
      },
      py::arg("c"), py::arg("n_steps"), py::arg("seed") = 1);

  // -- end-to-end analysis ---------------------------------------------
  m.def(
      "analyze",
      [](const std::vector<double>& y, const std::string& detrending,
         const std::vector<std::string>& tests, double alpha, std::uint64_t seed,
         std::size_t null_replications, int threads) {
        AnalysisOptions opt;
        opt.detrending = kind_of(detrending);
        opt.tests = tests;
        opt.alpha = alpha;
        opt.seed = seed;
        opt.null_replications = null_replications;
        opt.threads = threads;
        const AnalysisReport rep = analyze(y, opt);
        py::dict d;
        d["T"] = rep.T;
        d["detrending"] = to_string(rep.detrending);
        d["k_hat"] = rep.k_hat;
        d["alpha"] = rep.alpha;
        d["input_digest"] = rep.input_digest;
        py::list tests_out;
        for (const TestReport& t : rep.tests) {
          py::dict row;
          row["test"] = t.test;
          row["statistic"] = t.statistic;
          row["p_value"] = t.p_value;
          row["reject"] = t.reject;
          row["lag"] = t.lag;
          if (t.j_value) row["j_value"] = *t.j_value;
          tests_out.append(std::move(row));
        }
        d["tests"] = std::move(tests_out);
        d["bic_stationary"] = rep.bic_stationary;
        return d;
      },
      py::arg("y"), py::arg("detrending") = "constant",
      py::arg("tests") = std::vector<std::string>{"all"}, py::arg("alpha") = 0.05,
      py::arg("seed") = 1, py::arg("null_replications") = 4000,
      py::arg("threads") = 1,
      "Full test battery with T-matched simulated nulls");

  m.attr("__version__") = "0.1.0";
}
