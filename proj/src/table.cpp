#include "qdeform/table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace qdeform {

void Table::add_meta(std::string key, double value) { add_meta(std::move(key), format_double(value)); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.metadata) os << "# " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  // Insertion order keeps metadata in the same order as the CSV header.
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (double v : row) {
      // JSON has no inf/nan; those cells go through as strings.
      if (std::isfinite(v)) {
        r.push_back(v);
      } else {
        r.push_back(format_double(v));
      }
    }
    j["rows"].push_back(std::move(r));
  }
  os << j.dump(2) << '\n';
}

Table parse_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  Table t;
  for (const auto& [k, v] : j.at("metadata").items()) t.add_meta(k, v.get<std::string>());
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    std::vector<double> row;
    for (const auto& cell : r) {
      if (cell.is_string()) {
        row.push_back(std::stod(cell.get<std::string>()));
      } else {
        row.push_back(cell.get<double>());
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace qdeform
