#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "alknot/detrend.hpp"
#include "alknot/rng.hpp"

namespace alknot {

/// Tests the harness knows how to run. The al_bic/alie_bic entries are
/// BIC-tuned classifier columns reporting raw activation rates of y_{t-1}.
enum class TestId {
  tau,
  tau_ie,
  adf_gls,
  mz_t,
  j_alpha,
  spacing_plain,
  spacing_adaptive,
  spacing_enriched,
  al_bic,
  alie_bic,
};

std::string to_string(TestId id);
TestId test_id_from_string(const std::string& name);

/// How a per-replication value turns into a rejection.
enum class TestValueKind { right_tail_stat, left_tail_stat, p_value, indicator };
[[nodiscard]] TestValueKind value_kind(TestId id);

struct DgpGridCell {
  enum class Family { arma_near_ur, adf_form };
  Family family = Family::arma_near_ur;
  double c = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double rho_star = 0.0;
  std::vector<double> delta_star;
  double trend1 = 0.0;
  double trend2 = 0.0;
  int burn_in = 50;
  std::string label;

  /// Same cell with c = 0 / rho_star = 0 (the null-generating counterpart).
  [[nodiscard]] DgpGridCell null_counterpart() const;
  [[nodiscard]] std::vector<double> generate(int T, Rng& rng) const;
};

struct LagRule {
  bool use_maic = true;
  int fixed_p = 0;
};

struct ExperimentSpec {
  std::vector<DgpGridCell> dgps;
  std::vector<TestId> tests;
  std::vector<int> t_grid;
  DeterministicKind detrending = DeterministicKind::none;
  double level = 0.05;
  std::size_t replications = 1000;
  std::size_t null_replications = 10000;  // reference CV simulations (size mode)
  std::uint64_t master_seed = 1;
  bool size_adjust = true;
  LagRule lag_rule;
  int threads = 1;
};

/// Per-replication test values for one (cell, T): values[test][rep]. Failed
/// replications carry NaN and are excluded from the rates.
struct CellStats {
  std::vector<std::vector<double>> values;
  std::size_t failures = 0;
};

/// Replication r draws from Rng::substream(cell_seed, r); the J_alpha draw
/// feeding tau_ie, spacing_enriched and alie_bic is computed once per
/// replication. Identical output for any thread count.
[[nodiscard]] CellStats simulate_cell(const DgpGridCell& cell, int T,
                                      const ExperimentSpec& spec,
                                      std::uint64_t cell_seed);

struct ResultRow {
  std::string dgp;
  int T = 0;
  double c = 0.0;
  std::string test;
  double rejection_rate = 0.0;
  double mc_std_error = 0.0;
  bool adjusted = false;
  std::size_t replications = 0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::uint64_t master_seed = 0;
};

/// Rejection frequencies under each cell's own DGP, thresholds from each
/// test's own CV protocol (simulated random-walk nulls at matched T;
/// analytic p-values for the spacing tests; raw activation for BIC columns).
[[nodiscard]] ResultTable run_size(const ExperimentSpec& spec);

/// Rejection frequencies with (optionally) size-adjusted critical values
/// from a paired null run that re-uses the same replication substreams.
[[nodiscard]] ResultTable run_power(const ExperimentSpec& spec);

/// run_power over a grid of local-to-unity parameters with the null
/// calibration shared at c = 0.
[[nodiscard]] ResultTable local_power_curve(std::span<const double> cs,
                                            const ExperimentSpec& spec);

void write_result_csv(const ResultTable& table, std::ostream& out);
void write_result_csv(const ResultTable& table, const std::filesystem::path& path);

/// Raised on config schema violations; message carries the offending key path.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct McJob {
  enum class Mode { size, power, local_power } mode = Mode::size;
  ExperimentSpec spec;
  std::vector<double> c_grid;  // local_power mode
};

/// Parses the JSON experiment config (schema documented in the README).
[[nodiscard]] McJob parse_mc_config(const std::string& json_text);

/// Runs the job and writes results.csv, per-test .dat power-curve files
/// (local_power mode) and manifest.json into out_dir.
void run_mc_job(const McJob& job, const std::filesystem::path& out_dir);

}  // namespace alknot
