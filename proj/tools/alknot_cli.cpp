// alknot: unit root inference from adaptive-Lasso solution paths.
//
// Subcommands:
//   analyze      run the test battery on a series read from CSV
//   simulate-cv  generate null-distribution draws and a critical-value table
//   mc           run a Monte Carlo experiment from a JSON config
//
// Exit codes: 0 ok, 2 parse error (CSV/config), 3 series too short,
// 4 degenerate computation, 5 I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "alknot/analyze.hpp"
#include "alknot/csv.hpp"
#include "alknot/knot_tests.hpp"
#include "alknot/mc.hpp"

namespace {

int env_threads() {
  if (const char* v = std::getenv("ALKNOT_THREADS")) {
    const int n = std::atoi(v);
    if (n >= 1) return n;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit root testing from adaptive-Lasso solution paths"};
  app.require_subcommand(1);

  // analyze ------------------------------------------------------------
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a series from CSV");
  std::string csv_path;
  std::string det = "const";
  std::vector<std::string> tests = {"all"};
  double alpha = 0.05;
  std::uint64_t seed = 1;
  std::size_t null_reps = 4000;
  int threads = env_threads();
  std::string cv_table;
  analyze_cmd->add_option("csv", csv_path, "CSV with one value column")->required();
  analyze_cmd->add_option("--det", det, "Deterministic component: none|const|trend");
  analyze_cmd->add_option("--tests", tests,
                          "Subset of: tau tau_ie adf_gls mz_t j_alpha "
                          "spacing_plain spacing_adaptive spacing_enriched "
                          "al_bic alie_bic (default: all)");
  analyze_cmd->add_option("--alpha", alpha, "Test level");
  analyze_cmd->add_option("--seed", seed, "Master seed (bit-exact reruns)");
  analyze_cmd->add_option("--null-reps", null_reps, "Null simulation size");
  analyze_cmd->add_option("--threads", threads, "Worker threads");
  analyze_cmd->add_option("--cv-table", cv_table,
                          "Pre-generated null draws CSV for the knot tests");

  // simulate-cv ---------------------------------------------------------
  auto* cv_cmd = app.add_subcommand("simulate-cv",
                                    "Simulate a null distribution and CV table");
  std::string cv_test = "tau";
  std::string cv_det = "none";
  std::string engine = "finite";
  int cv_T = 250;
  double cv_c = 0.0;
  int cv_steps = 10000;
  std::size_t cv_reps = 20000;
  std::uint64_t cv_seed = 1;
  int cv_threads = env_threads();
  std::string out_path = "null_draws.csv";
  std::vector<double> alphas = {0.01, 0.025, 0.05, 0.10};
  cv_cmd->add_option("--test", cv_test, "tau or tau_ie");
  cv_cmd->add_option("--det", cv_det, "none|const|trend");
  cv_cmd->add_option("--engine", engine, "finite or asymptotic");
  cv_cmd->add_option("--T", cv_T, "Sample size (finite engine)");
  cv_cmd->add_option("--c", cv_c, "Local-to-unity parameter (asymptotic engine)");
  cv_cmd->add_option("--steps", cv_steps, "Discretization steps (asymptotic)");
  cv_cmd->add_option("--reps", cv_reps, "Replications");
  cv_cmd->add_option("--seed", cv_seed, "Seed");
  cv_cmd->add_option("--threads", cv_threads, "Worker threads");
  cv_cmd->add_option("--out", out_path,
                     "Draws file; the CV table lands next to it as <out>.cv.csv");
  cv_cmd->add_option("--alphas", alphas, "Levels for the CV table");

  // mc -------------------------------------------------------------------
  auto* mc_cmd = app.add_subcommand("mc", "Run a Monte Carlo experiment");
  std::string config_path;
  std::string out_dir = "mc_out";
  int mc_threads = 0;
  mc_cmd->add_option("config", config_path, "JSON experiment config")->required();
  mc_cmd->add_option("--out-dir", out_dir, "Output directory");
  mc_cmd->add_option("--threads", mc_threads, "Override config thread count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) {
      const std::vector<double> y = alknot::read_series_csv(csv_path);
      alknot::AnalysisOptions opt;
      opt.detrending = alknot::deterministic_kind_from_string(det);
      opt.tests = tests;
      opt.alpha = alpha;
      opt.seed = seed;
      opt.null_replications = null_reps;
      opt.threads = threads;
      if (!cv_table.empty()) opt.cv_table_path = cv_table;
      const alknot::AnalysisReport report = alknot::analyze(y, opt);
      std::cout << alknot::report_to_json(report) << "\n";
      return 0;
    }

    if (*cv_cmd) {
      const auto variant = alknot::knot_variant_from_string(cv_test);
      const auto kind = alknot::deterministic_kind_from_string(cv_det);
      alknot::NullDistribution null;
      if (engine == "finite") {
        null = alknot::simulate_null_finite(variant, kind, cv_T, cv_reps, cv_seed,
                                            cv_threads);
      } else if (engine == "asymptotic") {
        null = alknot::simulate_null_asymptotic(variant, kind, cv_c, cv_steps,
                                                cv_reps, cv_seed, cv_threads);
      } else {
        std::cerr << "unknown engine: " << engine << "\n";
        return 2;
      }
      alknot::write_null_csv(null, out_path);
      const auto cvs = alknot::critical_values(null, alphas);
      const std::filesystem::path table_path =
          std::filesystem::path(out_path).replace_extension(".cv.csv");
      std::ofstream table(table_path);
      if (!table) throw std::runtime_error("cannot open " + table_path.string());
      table << "# alknot-cv-v1\n";
      table << "# test: " << alknot::to_string(variant) << "\n";
      table << "# detrending: " << alknot::to_string(kind) << "\n";
      table << "# engine: " << engine << "\n";
      if (engine == "finite") {
        table << "# T: " << cv_T << "\n";
      } else {
        table << "# c: " << alknot::format_double(cv_c) << "\n";
        table << "# n_steps: " << cv_steps << "\n";
      }
      table << "# replications: " << cv_reps << "\n";
      table << "# seed: " << cv_seed << "\n";
      table << "alpha,critical_value\n";
      for (const auto& [a, cv] : cvs) {
        char abuf[32];
        std::snprintf(abuf, sizeof(abuf), "%g", a);
        table << abuf << ',' << alknot::format_double(cv) << "\n";
      }
      if (!table) throw std::runtime_error("write failed: " + table_path.string());
      std::cout << "wrote " << out_path << " and " << table_path.string() << "\n";
      return 0;
    }

    if (*mc_cmd) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "cannot open config " << config_path << "\n";
        return 5;
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      alknot::McJob job = alknot::parse_mc_config(buf.str());
      if (mc_threads > 0) job.spec.threads = mc_threads;
      alknot::run_mc_job(job, out_dir);
      std::cout << "wrote results to " << out_dir << "\n";
      return 0;
    }
  } catch (const alknot::csv_parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const alknot::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const alknot::invalid_length_error& e) {
    std::cerr << "series too short: " << e.what() << "\n";
    return 3;
  } catch (const alknot::degenerate_error& e) {
    std::cerr << "degenerate computation: " << e.what() << "\n";
    return 4;
  } catch (const alknot::numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
