#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace preslab {

// Decimal formatting used for every numeric output, wide enough that parsing
// the text recovers the double bit for bit.
std::string format_real(double v);

// Ordered key = value record; one per study run.
class Summary {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, std::int64_t value);
  void add_flag(const std::string& key, bool value);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  void write(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace preslab
