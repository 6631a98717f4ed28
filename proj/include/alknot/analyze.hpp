#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alknot/detrend.hpp"
#include "alknot/knot_tests.hpp"

namespace alknot {

/// Options for the end-to-end analysis of one observed series. p-values come
/// from nulls simulated at the series' own length with the given seed, so a
/// fixed seed reproduces the report bit-exactly; a pre-generated draws file
/// (see simulate-cv) can replace the on-the-fly knot-test null.
struct AnalysisOptions {
  DeterministicKind detrending = DeterministicKind::constant;
  std::vector<std::string> tests = {"all"};
  double alpha = 0.05;
  std::uint64_t seed = 1;
  std::size_t null_replications = 4000;
  int threads = 1;
  std::optional<std::string> cv_table_path;  // knot-test null draws CSV
};

struct TestReport {
  std::string test;
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject = false;
  int lag = 0;
  std::optional<double> j_value;
};

struct AnalysisReport {
  int T = 0;
  DeterministicKind detrending = DeterministicKind::constant;
  int k_hat = 0;  // MAIC lag on the FD-adjusted series
  double alpha = 0.05;
  std::uint64_t seed = 1;
  std::string input_digest;  // FNV-1a over the raw sample bytes
  std::vector<TestReport> tests;
  std::vector<std::string> bic_stationary;  // BIC classifiers voting stationary
};

[[nodiscard]] AnalysisReport analyze(std::span<const double> y,
                                     const AnalysisOptions& options);

/// Versioned JSON rendering of the report.
[[nodiscard]] std::string report_to_json(const AnalysisReport& report);

}  // namespace alknot
