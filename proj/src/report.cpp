#include "preslab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "preslab/config.hpp"

namespace preslab {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void Summary::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void Summary::add(const std::string& key, double value) { add(key, format_real(value)); }

void Summary::add(const std::string& key, std::int64_t value) {
  add(key, std::to_string(value));
}

void Summary::add_flag(const std::string& key, bool value) {
  add(key, std::string(value ? "true" : "false"));
}

void Summary::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write summary: " + path);
  for (const auto& [key, value] : entries_) out << key << " = " << value << "\n";
  if (!out) throw IoError("failed writing summary: " + path);
}

void write_csv(const std::string& path, const CsvTable& table) {
  for (const auto& row : table.rows)
    if (row.size() != table.header.size())
      throw std::invalid_argument("csv row width does not match the schema: " + path);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write csv: " + path);
  for (std::size_t c = 0; c < table.header.size(); ++c)
    out << (c ? "," : "") << table.header[c];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
  if (!out) throw IoError("failed writing csv: " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read csv: " + path);
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      table.header = cells;
      first = false;
    } else {
      table.rows.push_back(cells);
    }
  }
  return table;
}

}  // namespace preslab
