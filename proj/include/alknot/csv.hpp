#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace alknot {

/// Raised when a series CSV cannot be parsed; carries a line diagnostic.
class csv_parse_error : public std::runtime_error {
 public:
  csv_parse_error(std::string message, int line)
      : std::runtime_error(std::move(message)), line_number(line) {}
  int line_number;
};

/// Reads a one-value-per-row series. Rules: '#' lines and blank lines are
/// skipped; a non-numeric first data row is treated as a header; rows may
/// carry an optional leading index/date column (the last field is the
/// value); the delimiter is comma, semicolon or whitespace.
[[nodiscard]] std::vector<double> read_series_csv(const std::filesystem::path& path);

[[nodiscard]] std::vector<double> parse_series_csv(const std::string& content,
                                                   const std::string& origin);

/// %.17g rendering used everywhere a double is written to CSV, so output
/// files are byte-identical across runs and thread counts.
[[nodiscard]] std::string format_double(double value);

}  // namespace alknot
