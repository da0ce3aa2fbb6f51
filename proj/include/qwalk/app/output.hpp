#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qwalk::app {

/// File-system failure (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::int64_t, double, std::string>;

/// Rows of a plot-ready table. Doubles are written with 17 significant
/// digits so identical runs give identical bytes.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

std::string format_double(double v);
std::string to_csv(const Table& table);
nlohmann::json to_json(const Table& table);

/// Reads a CSV produced by to_csv; numeric cells come back as doubles.
Table read_csv(const std::filesystem::path& path);

/// Writes <dir>/<stem>.csv or <dir>/<stem>.json and returns the path.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, const std::string& format);

/// Sidecar <dir>/<stem>.meta.json: command, version, config echo, wall time.
std::filesystem::path write_metadata(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& command, const nlohmann::json& config,
                                     double wall_seconds);

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qwalk::app
