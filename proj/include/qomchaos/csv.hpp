// CSV helpers: 17-significant-digit serialization (exact double round-trip)
// and a small reader for the plot command and tests.
#pragma once

#include <string>
#include <vector>

namespace qomchaos {

// Shortest-exact style "%.17g" formatting; round-trips any finite double.
std::string format_g17(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;  // throws if absent
  std::vector<double> numeric_column(const std::string& name) const;
};

CsvTable read_csv(const std::string& text);
CsvTable read_csv_file(const std::string& path);

}  // namespace qomchaos
