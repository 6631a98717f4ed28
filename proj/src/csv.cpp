#include "alknot/csv.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace alknot {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  const bool has_comma = line.find(',') != std::string::npos;
  const bool has_semi = line.find(';') != std::string::npos;
  const auto push = [&] {
    // trim
    std::size_t b = current.find_first_not_of(" \t\r");
    std::size_t e = current.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : current.substr(b, e - b + 1));
    current.clear();
  };
  for (char ch : line) {
    const bool is_sep = has_comma   ? ch == ','
                        : has_semi  ? ch == ';'
                                    : std::isspace(static_cast<unsigned char>(ch));
    if (is_sep) {
      if (!has_comma && !has_semi && current.empty()) continue;  // collapse runs
      push();
    } else {
      current += ch;
    }
  }
  if (!current.empty() || has_comma || has_semi) push();
  while (!fields.empty() && fields.back().empty()) fields.pop_back();
  return fields;
}

bool parse_number(const std::string& field, double& out) {
  if (field.empty()) return false;
  char* end = nullptr;
  out = std::strtod(field.c_str(), &end);
  return end == field.c_str() + field.size();
}

}  // namespace

std::vector<double> parse_series_csv(const std::string& content,
                                     const std::string& origin) {
  std::istringstream in(content);
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (line[b] == '#') continue;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() > 2)
      throw csv_parse_error(origin + ":" + std::to_string(line_no) +
                                ": expected one value column (with an optional "
                                "leading index column), got " +
                                std::to_string(fields.size()) + " fields",
                            line_no);
    double value = 0.0;
    if (!parse_number(fields.back(), value)) {
      if (!saw_data) continue;  // header row
      throw csv_parse_error(origin + ":" + std::to_string(line_no) +
                                ": cannot parse value '" + fields.back() + "'",
                            line_no);
    }
    saw_data = true;
    values.push_back(value);
  }
  if (values.empty())
    throw csv_parse_error(origin + ": no numeric rows found", line_no);
  return values;
}

std::vector<double> read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open series file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_series_csv(buffer.str(), path.string());
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace alknot
