#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qdeform {

/// Tabular CLI output. Cells are doubles; metadata is free-form key/value.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
  void add_meta(std::string key, double value);
};

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

/// Inverse of write_json.
Table parse_json(const std::string& text);

}  // namespace qdeform
