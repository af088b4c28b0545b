#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kp::harness {

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

// Column names carry their units, e.g. "t [time]".
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

void write_csv(const CsvTable& table, const std::filesystem::path& path);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace kp::harness
