#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qwalk/core.hpp"
#include "qwalk/schedule.hpp"

namespace qwalk::app {

/// Invalid user configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "0.7854", "0.25pi", "pi", "-pi", "1/3pi".
double parse_angle(const std::string& text);
double parse_angle(const nlohmann::json& value);
inline double parse_angle(const char* text) { return parse_angle(std::string(text)); }

/// "point" or "gaussian:W" (optionally "gaussian:W@C" for a center C).
PositionProfile parse_profile(const std::string& text);

/// "1,5,10"
std::vector<Site> parse_step_list(const std::string& text);

struct ScheduleSpec {
  std::string kind = "homogeneous";  // homogeneous | n_period | explicit | split_step
  int n = 2;
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::vector<double> thetas;

  CoinSchedule build() const;
  /// Same kind with the coin angles replaced.
  ScheduleSpec with_angles(double t1, double t2) const;
};

struct AnalysisFlags {
  bool sigma = true;
  bool quantiles = true;
  bool entropy = true;
  bool residuals = false;
  bool amplitudes = false;
  double mass = 0.99;
  double eps = 1e-10;
};

struct RunConfig {
  ScheduleSpec schedule;
  InitialCoinState initial;
  PositionProfile profile;
  Site steps = 100;
  std::vector<Site> record_at;
  AnalysisFlags analysis;
  std::string out_dir = ".";
  std::string format = "csv";

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct GridAxis {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

struct SweepConfig {
  RunConfig base;
  GridAxis theta1{0.0, 0.0, 1};
  std::optional<GridAxis> theta2;  // absent: theta2 of the base schedule
  int k_points = 4097;

  void validate() const;
};

/// "start,stop,count" with angle literals.
GridAxis parse_grid(const std::string& text);

RunConfig run_config_from_json(const nlohmann::json& doc);
SweepConfig sweep_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const SweepConfig& cfg);

/// Reads a JSON document; ConfigError on parse failure (with line/column).
nlohmann::json load_json_file(const std::string& path);

}  // namespace qwalk::app
