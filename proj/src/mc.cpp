#include "alknot/mc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "alknot/classical.hpp"
#include "alknot/csv.hpp"
#include "alknot/dgp.hpp"
#include "alknot/knot_tests.hpp"
#include "alknot/lag_select.hpp"
#include "alknot/lars.hpp"
#include "alknot/linalg.hpp"
#include "alknot/parallel.hpp"
#include "alknot/spacing.hpp"
#include "alknot/weights.hpp"

namespace alknot {

namespace {
using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, TestId>& test_name_map() {
  static const std::map<std::string, TestId> m = {
      {"tau", TestId::tau},
      {"tau_ie", TestId::tau_ie},
      {"adf_gls", TestId::adf_gls},
      {"mz_t", TestId::mz_t},
      {"j_alpha", TestId::j_alpha},
      {"spacing_plain", TestId::spacing_plain},
      {"spacing_adaptive", TestId::spacing_adaptive},
      {"spacing_enriched", TestId::spacing_enriched},
      {"al_bic", TestId::al_bic},
      {"alie_bic", TestId::alie_bic},
  };
  return m;
}

}  // namespace

std::string to_string(TestId id) {
  for (const auto& [name, value] : test_name_map()) {
    if (value == id) return name;
  }
  return "tau";
}

TestId test_id_from_string(const std::string& name) {
  const auto it = test_name_map().find(name);
  if (it == test_name_map().end())
    throw std::invalid_argument("unknown test id: " + name);
  return it->second;
}

TestValueKind value_kind(TestId id) {
  switch (id) {
    case TestId::tau:
    case TestId::tau_ie:
      return TestValueKind::right_tail_stat;
    case TestId::adf_gls:
    case TestId::mz_t:
    case TestId::j_alpha:
      return TestValueKind::left_tail_stat;
    case TestId::spacing_plain:
    case TestId::spacing_adaptive:
    case TestId::spacing_enriched:
      return TestValueKind::p_value;
    case TestId::al_bic:
    case TestId::alie_bic:
      return TestValueKind::indicator;
  }
  return TestValueKind::right_tail_stat;
}

DgpGridCell DgpGridCell::null_counterpart() const {
  DgpGridCell cell = *this;
  if (family == Family::arma_near_ur) {
    cell.c = 0.0;
  } else {
    cell.rho_star = 0.0;
  }
  return cell;
}

std::vector<double> DgpGridCell::generate(int T, Rng& rng) const {
  std::vector<double> y =
      family == Family::arma_near_ur
          ? gen_arma_near_ur(T, c, phi, theta, rng, burn_in)
          : gen_adf_form(T, rho_star, delta_star, rng, burn_in);
  if (trend1 != 0.0 || trend2 != 0.0) y = add_deterministic(y, trend1, trend2);
  return y;
}

namespace {

bool wants(const std::vector<TestId>& tests, TestId id) {
  return std::find(tests.begin(), tests.end(), id) != tests.end();
}

// All statistics for one replication, in a fixed evaluation order so the rng
// stream does not depend on thread scheduling.
void one_replication(const DgpGridCell& cell, int T, const ExperimentSpec& spec,
                     std::uint64_t cell_seed, std::size_t rep,
                     std::vector<double>& out) {
  Rng rng = Rng::substream(cell_seed, rep);
  const std::vector<double> y = cell.generate(T, rng);
  const auto& tests = spec.tests;

  const std::vector<double> adj = fd_adjust(y, spec.detrending);
  const int p = spec.lag_rule.use_maic ? select_lag(adj).k_hat
                                       : spec.lag_rule.fixed_p;

  const bool needs_bic = wants(tests, TestId::al_bic) || wants(tests, TestId::alie_bic);
  AdfDesign design;
  OlsFit fit;
  if (needs_bic) {
    design = build_design(adj, p);
    fit = ols_fit(design);
  }

  const bool needs_j = wants(tests, TestId::tau_ie) ||
                       wants(tests, TestId::alie_bic) ||
                       wants(tests, TestId::spacing_enriched);
  double j_draw = 0.0;
  if (needs_j)
    j_draw = j_alpha(y, spec.detrending, 0.1, 150, kEnrichmentLrvLag, rng);

  for (std::size_t i = 0; i < tests.size(); ++i) {
    switch (tests[i]) {
      case TestId::tau:
        out[i] = tau_statistic(y, p, spec.detrending).statistic;
        break;
      case TestId::tau_ie:
        out[i] = tau_ie_statistic(y, p, spec.detrending, j_draw).statistic;
        break;
      case TestId::adf_gls:
        out[i] = adf_gls(y, spec.detrending,
                         spec.lag_rule.use_maic ? std::optional<int>{} : p)
                     .statistic;
        break;
      case TestId::mz_t:
        out[i] = mz_t(y, spec.detrending,
                      spec.lag_rule.use_maic ? std::optional<int>{} : p)
                     .statistic;
        break;
      case TestId::j_alpha:
        out[i] = j_alpha_test(y, spec.detrending, 0.1, 150, rng).statistic;
        break;
      case TestId::spacing_plain:
        out[i] = spacing_pvalue(y, p, spec.detrending, SpacingVariant::plain)
                     .p_value;
        break;
      case TestId::spacing_adaptive:
        out[i] = spacing_pvalue(y, p, spec.detrending, SpacingVariant::adaptive)
                     .p_value;
        break;
      case TestId::spacing_enriched:
        out[i] =
            spacing_pvalue_with_j(y, p, spec.detrending, j_draw).p_value;
        break;
      case TestId::al_bic: {
        const PenaltyWeights w = ols_weights(fit);
        if (!std::isfinite(w.w1)) {
          out[i] = 0.0;
          break;
        }
        const SolutionPath path = compute_path(design, w, PathMode::lasso);
        const BicSelection sel = bic_tune(path, design);
        out[i] = std::find(sel.active.begin(), sel.active.end(), 0) !=
                         sel.active.end()
                     ? 1.0
                     : 0.0;
        break;
      }
      case TestId::alie_bic: {
        const PenaltyWeights w = enriched_weights(fit, j_draw);
        if (!std::isfinite(w.w1)) {
          out[i] = 0.0;
          break;
        }
        const SolutionPath path = compute_path(design, w, PathMode::lasso);
        const BicSelection sel = bic_tune(path, design);
        out[i] = std::find(sel.active.begin(), sel.active.end(), 0) !=
                         sel.active.end()
                     ? 1.0
                     : 0.0;
        break;
      }
    }
  }
}

double quantile_of(std::vector<double> values, double prob) {
  std::sort(values.begin(), values.end());
  return detail::quantile_sorted(values, prob);
}

std::uint64_t mix_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                      std::uint64_t c) {
  std::uint64_t s = seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xbf58476d1ce4e5b9ULL) ^
                    (c * 0x94d049bb133111ebULL);
  return detail::splitmix64(s);
}

}  // namespace

CellStats simulate_cell(const DgpGridCell& cell, int T, const ExperimentSpec& spec,
                        std::uint64_t cell_seed) {
  CellStats stats;
  stats.values.assign(spec.tests.size(),
                      std::vector<double>(spec.replications, kNaN));
  std::vector<char> failed(spec.replications, 0);

  detail::parallel_for(spec.replications, spec.threads, [&](std::size_t r) {
    std::vector<double> row(spec.tests.size(), kNaN);
    try {
      one_replication(cell, T, spec, cell_seed, r, row);
    } catch (const std::exception&) {
      failed[r] = 1;
    }
    for (std::size_t i = 0; i < spec.tests.size(); ++i) stats.values[i][r] = row[i];
  });
  for (char f : failed) stats.failures += f;
  return stats;
}

namespace {

ResultRow make_row(const DgpGridCell& cell, int T, TestId test, double rate,
                   std::size_t reps, bool adjusted) {
  ResultRow row;
  row.dgp = cell.label.empty() ? "cell" : cell.label;
  row.T = T;
  row.c = cell.family == DgpGridCell::Family::arma_near_ur ? cell.c
                                                           : cell.rho_star;
  row.test = to_string(test);
  row.rejection_rate = rate;
  row.mc_std_error = std::sqrt(rate * (1.0 - rate) / static_cast<double>(reps));
  row.adjusted = adjusted;
  row.replications = reps;
  return row;
}

// rejection rate over non-NaN values given a threshold rule
std::pair<double, std::size_t> rejection_rate(const std::vector<double>& values,
                                              TestValueKind kind, double threshold) {
  std::size_t n = 0, rejections = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    ++n;
    switch (kind) {
      case TestValueKind::right_tail_stat:
        rejections += v > threshold;
        break;
      case TestValueKind::left_tail_stat:
        rejections += v < threshold;
        break;
      case TestValueKind::p_value:
        rejections += v < threshold;
        break;
      case TestValueKind::indicator:
        rejections += v >= 0.5;
        break;
    }
  }
  if (n == 0) return {0.0, 0};
  return {static_cast<double>(rejections) / static_cast<double>(n), n};
}

std::vector<double> finite_values(const std::vector<double>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (!std::isnan(v)) out.push_back(v);
  }
  return out;
}

// Reference threshold from each test's own CV protocol (size mode).
double own_protocol_threshold(TestId test, int T, const ExperimentSpec& spec,
                              std::uint64_t seed) {
  switch (value_kind(test)) {
    case TestValueKind::right_tail_stat: {
      const KnotVariant variant =
          test == TestId::tau ? KnotVariant::tau : KnotVariant::tau_ie;
      const NullDistribution null = simulate_null_finite(
          variant, spec.detrending, T, spec.null_replications, seed, spec.threads);
      return critical_values(null, std::array<double, 1>{spec.level})[0].second;
    }
    case TestValueKind::left_tail_stat: {
      const ClassicalTest ct = test == TestId::adf_gls ? ClassicalTest::adf_gls
                               : test == TestId::mz_t  ? ClassicalTest::mz_t
                                                       : ClassicalTest::j_alpha;
      const std::vector<double> null = simulate_classical_null(
          ct, spec.detrending, T, spec.null_replications, seed, spec.threads);
      return detail::quantile_sorted(null, spec.level);
    }
    case TestValueKind::p_value:
      return spec.level;
    case TestValueKind::indicator:
      return 0.5;  // unused
  }
  return spec.level;
}

}  // namespace

ResultTable run_size(const ExperimentSpec& spec) {
  ResultTable table;
  table.master_seed = spec.master_seed;

  // Threshold cache: one reference null per (test, T).
  std::map<std::pair<int, int>, double> thresholds;
  for (std::size_t ti = 0; ti < spec.tests.size(); ++ti) {
    for (std::size_t Ti = 0; Ti < spec.t_grid.size(); ++Ti) {
      const TestId test = spec.tests[ti];
      const int T = spec.t_grid[Ti];
      const std::uint64_t cv_seed =
          mix_key(spec.master_seed, 0xC7, static_cast<std::uint64_t>(ti),
                  static_cast<std::uint64_t>(T));
      thresholds[{static_cast<int>(ti), T}] =
          own_protocol_threshold(test, T, spec, cv_seed);
    }
  }

  for (std::size_t ci = 0; ci < spec.dgps.size(); ++ci) {
    for (std::size_t Ti = 0; Ti < spec.t_grid.size(); ++Ti) {
      const int T = spec.t_grid[Ti];
      const std::uint64_t cell_seed =
          mix_key(spec.master_seed, static_cast<std::uint64_t>(ci),
                  static_cast<std::uint64_t>(Ti), 1);
      const CellStats stats = simulate_cell(spec.dgps[ci], T, spec, cell_seed);
      for (std::size_t ti = 0; ti < spec.tests.size(); ++ti) {
        const auto [rate, n] =
            rejection_rate(stats.values[ti], value_kind(spec.tests[ti]),
                           thresholds[{static_cast<int>(ti), T}]);
        table.rows.push_back(
            make_row(spec.dgps[ci], T, spec.tests[ti], rate, n, false));
      }
    }
  }
  return table;
}

ResultTable run_power(const ExperimentSpec& spec) {
  ResultTable table;
  table.master_seed = spec.master_seed;

  for (std::size_t ci = 0; ci < spec.dgps.size(); ++ci) {
    for (std::size_t Ti = 0; Ti < spec.t_grid.size(); ++Ti) {
      const int T = spec.t_grid[Ti];
      const std::uint64_t cell_seed =
          mix_key(spec.master_seed, static_cast<std::uint64_t>(ci),
                  static_cast<std::uint64_t>(Ti), 1);
      const CellStats alt = simulate_cell(spec.dgps[ci], T, spec, cell_seed);

      CellStats null_stats;
      if (spec.size_adjust) {
        null_stats =
            simulate_cell(spec.dgps[ci].null_counterpart(), T, spec, cell_seed);
      }

      for (std::size_t ti = 0; ti < spec.tests.size(); ++ti) {
        const TestId test = spec.tests[ti];
        const TestValueKind kind = value_kind(test);
        double threshold = spec.level;
        bool adjusted = false;
        if (kind == TestValueKind::indicator) {
          threshold = 0.5;
        } else if (spec.size_adjust) {
          adjusted = true;
          const std::vector<double> null_vals = finite_values(null_stats.values[ti]);
          if (kind == TestValueKind::right_tail_stat) {
            threshold = quantile_of(null_vals, 1.0 - spec.level);
          } else {  // left-tail statistics and p-values both reject low
            threshold = quantile_of(null_vals, spec.level);
          }
        } else if (kind != TestValueKind::p_value) {
          const std::uint64_t cv_seed =
              mix_key(spec.master_seed, 0xC7, static_cast<std::uint64_t>(ti),
                      static_cast<std::uint64_t>(T));
          threshold = own_protocol_threshold(test, T, spec, cv_seed);
        }
        const auto [rate, n] = rejection_rate(alt.values[ti], kind, threshold);
        table.rows.push_back(make_row(spec.dgps[ci], T, test, rate, n,
                                      adjusted && kind != TestValueKind::indicator));
      }
    }
  }
  return table;
}

ResultTable local_power_curve(std::span<const double> cs,
                              const ExperimentSpec& spec) {
  ResultTable table;
  table.master_seed = spec.master_seed;

  for (std::size_t ci = 0; ci < spec.dgps.size(); ++ci) {
    if (spec.dgps[ci].family != DgpGridCell::Family::arma_near_ur)
      throw std::invalid_argument(
          "local_power_curve: needs arma_near_ur cells (c is the moving knob)");
    for (std::size_t Ti = 0; Ti < spec.t_grid.size(); ++Ti) {
      const int T = spec.t_grid[Ti];
      const std::uint64_t cell_seed =
          mix_key(spec.master_seed, static_cast<std::uint64_t>(ci),
                  static_cast<std::uint64_t>(Ti), 1);

      DgpGridCell null_cell = spec.dgps[ci];
      null_cell.c = 0.0;
      const CellStats null_stats = simulate_cell(null_cell, T, spec, cell_seed);

      std::vector<double> thresholds(spec.tests.size(), spec.level);
      for (std::size_t ti = 0; ti < spec.tests.size(); ++ti) {
        const TestValueKind kind = value_kind(spec.tests[ti]);
        if (kind == TestValueKind::indicator) continue;
        const std::vector<double> null_vals = finite_values(null_stats.values[ti]);
        thresholds[ti] = kind == TestValueKind::right_tail_stat
                             ? quantile_of(null_vals, 1.0 - spec.level)
                             : quantile_of(null_vals, spec.level);
      }

      for (double c : cs) {
        DgpGridCell cell = spec.dgps[ci];
        cell.c = c;
        const CellStats stats = cell.c == 0.0
                                    ? null_stats
                                    : simulate_cell(cell, T, spec, cell_seed);
        for (std::size_t ti = 0; ti < spec.tests.size(); ++ti) {
          const TestValueKind kind = value_kind(spec.tests[ti]);
          const auto [rate, n] =
              rejection_rate(stats.values[ti], kind, thresholds[ti]);
          ResultRow row = make_row(cell, T, spec.tests[ti], rate, n,
                                   kind != TestValueKind::indicator);
          row.c = c;
          table.rows.push_back(std::move(row));
        }
      }
    }
  }
  return table;
}

void write_result_csv(const ResultTable& table, std::ostream& out) {
  out << "# alknot-mc-v1\n";
  out << "# seed: " << table.master_seed << "\n";
  out << "dgp,T,c,test,rejection_rate,mc_std_error,adjusted,replications\n";
  for (const ResultRow& row : table.rows) {
    out << row.dgp << ',' << row.T << ',' << format_double(row.c) << ','
        << row.test << ',' << format_double(row.rejection_rate) << ','
        << format_double(row.mc_std_error) << ',' << (row.adjusted ? 1 : 0) << ','
        << row.replications << "\n";
  }
}

void write_result_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  write_result_csv(table, out);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

template <typename T>
T require_key(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key))
    throw config_error("missing key: " + path + "/" + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw config_error("bad value at " + path + "/" + key + ": " + e.what());
  }
}

template <typename T>
T optional_key(const json& j, const std::string& path, const std::string& key,
               T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw config_error("bad value at " + path + "/" + key + ": " + e.what());
  }
}

DgpGridCell parse_dgp(const json& j, const std::string& path) {
  DgpGridCell cell;
  const std::string family = require_key<std::string>(j, path, "family");
  if (family == "arma_near_ur") {
    cell.family = DgpGridCell::Family::arma_near_ur;
    cell.c = optional_key<double>(j, path, "c", 0.0);
    cell.phi = optional_key<double>(j, path, "phi", 0.0);
    cell.theta = optional_key<double>(j, path, "theta", 0.0);
  } else if (family == "adf_form") {
    cell.family = DgpGridCell::Family::adf_form;
    cell.rho_star = optional_key<double>(j, path, "rho_star", 0.0);
    cell.delta_star =
        optional_key<std::vector<double>>(j, path, "delta_star", {});
  } else {
    throw config_error("bad value at " + path + "/family: " + family);
  }
  if (j.contains("trend")) {
    const auto trend = require_key<std::vector<double>>(j, path, "trend");
    if (trend.size() != 2)
      throw config_error("bad value at " + path + "/trend: need [theta1, theta2]");
    cell.trend1 = trend[0];
    cell.trend2 = trend[1];
  }
  cell.burn_in = optional_key<int>(j, path, "burn_in", 50);
  cell.label = optional_key<std::string>(j, path, "label", family);
  return cell;
}

}  // namespace

McJob parse_mc_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }

  McJob job;
  const std::string mode = optional_key<std::string>(j, "", "mode", "size");
  if (mode == "size") {
    job.mode = McJob::Mode::size;
  } else if (mode == "power") {
    job.mode = McJob::Mode::power;
  } else if (mode == "local_power") {
    job.mode = McJob::Mode::local_power;
  } else {
    throw config_error("bad value at /mode: " + mode);
  }

  const auto tests = require_key<std::vector<std::string>>(j, "", "tests");
  if (tests.empty()) throw config_error("empty list at /tests");
  for (const auto& name : tests) {
    try {
      job.spec.tests.push_back(test_id_from_string(name));
    } catch (const std::invalid_argument& e) {
      throw config_error(std::string("bad value at /tests: ") + e.what());
    }
  }

  if (!j.contains("dgps") || !j.at("dgps").is_array() || j.at("dgps").empty())
    throw config_error("missing or empty array at /dgps");
  for (std::size_t i = 0; i < j.at("dgps").size(); ++i) {
    job.spec.dgps.push_back(
        parse_dgp(j.at("dgps")[i], "/dgps/" + std::to_string(i)));
  }

  job.spec.t_grid = require_key<std::vector<int>>(j, "", "T");
  if (job.spec.t_grid.empty()) throw config_error("empty list at /T");
  for (int T : job.spec.t_grid) {
    if (T < 25) throw config_error("bad value at /T: need T >= 25");
  }

  job.spec.detrending = deterministic_kind_from_string(
      optional_key<std::string>(j, "", "detrending", "none"));
  job.spec.level = optional_key<double>(j, "", "level", 0.05);
  if (!(job.spec.level > 0.0 && job.spec.level < 1.0))
    throw config_error("bad value at /level: must lie in (0, 1)");
  job.spec.replications =
      optional_key<std::size_t>(j, "", "replications", 1000);
  if (job.spec.replications < 100)
    throw config_error("bad value at /replications: need >= 100");
  job.spec.null_replications =
      optional_key<std::size_t>(j, "", "null_replications", 10000);
  job.spec.master_seed = optional_key<std::uint64_t>(j, "", "seed", 1);
  job.spec.size_adjust = optional_key<bool>(j, "", "size_adjust", true);
  job.spec.threads = optional_key<int>(j, "", "threads", 1);

  if (j.contains("lag")) {
    const json& lag = j.at("lag");
    const std::string rule = require_key<std::string>(lag, "/lag", "rule");
    if (rule == "maic") {
      job.spec.lag_rule.use_maic = true;
    } else if (rule == "fixed") {
      job.spec.lag_rule.use_maic = false;
      job.spec.lag_rule.fixed_p = require_key<int>(lag, "/lag", "p");
      if (job.spec.lag_rule.fixed_p < 0)
        throw config_error("bad value at /lag/p: must be >= 0");
    } else {
      throw config_error("bad value at /lag/rule: " + rule);
    }
  }

  if (job.mode == McJob::Mode::local_power) {
    job.c_grid = require_key<std::vector<double>>(j, "", "c_grid");
    if (job.c_grid.empty()) throw config_error("empty list at /c_grid");
    for (double c : job.c_grid) {
      if (c > 0.0) throw config_error("bad value at /c_grid: c must be <= 0");
    }
  }
  return job;
}

void run_mc_job(const McJob& job, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  ResultTable table;
  switch (job.mode) {
    case McJob::Mode::size:
      table = run_size(job.spec);
      break;
    case McJob::Mode::power:
      table = run_power(job.spec);
      break;
    case McJob::Mode::local_power:
      table = local_power_curve(job.c_grid, job.spec);
      break;
  }
  write_result_csv(table, out_dir / "results.csv");

  if (job.mode == McJob::Mode::local_power) {
    // gnuplot-style curve files: one block per (dgp, T), columns c rate.
    for (const TestId test : job.spec.tests) {
      std::ofstream out(out_dir / ("power_curve_" + to_string(test) + ".dat"));
      out << "# c rejection_rate (one block per dgp/T)\n";
      std::string block;
      for (const ResultRow& row : table.rows) {
        if (row.test != to_string(test)) continue;
        const std::string key = row.dgp + "/T=" + std::to_string(row.T);
        if (key != block) {
          if (!block.empty()) out << "\n\n";
          out << "# " << key << "\n";
          block = key;
        }
        out << format_double(row.c) << ' ' << format_double(row.rejection_rate)
            << "\n";
      }
    }
  }

  json manifest;
  manifest["format"] = "alknot-mc-manifest-v1";
  manifest["seed"] = job.spec.master_seed;
  manifest["mode"] = job.mode == McJob::Mode::size        ? "size"
                     : job.mode == McJob::Mode::power     ? "power"
                                                          : "local_power";
  manifest["replications"] = job.spec.replications;
  manifest["threads"] = job.spec.threads;
  manifest["version"] = "0.1.0";
  manifest["outputs"] = json::array({"results.csv"});
  std::ofstream mout(out_dir / "manifest.json");
  if (!mout) throw std::runtime_error("cannot write manifest.json");
  mout << manifest.dump(2) << "\n";
}

}  // namespace alknot
