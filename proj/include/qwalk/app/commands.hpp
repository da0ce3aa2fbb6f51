#pragma once

// Command implementations behind the qwalk executable. Each compute_* is a
// pure function returning tables; the cmd_* wrappers write them to disk
// together with a metadata sidecar.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/app/config.hpp"
#include "qwalk/app/output.hpp"

namespace qwalk::app {

/// A numeric invariant failed at run time, e.g. norm drift (exit code 3).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kNormGuard = 1e-10;

struct NamedTable {
  std::string stem;
  Table table;
};

/// walk_distribution (+ walk_summary, walk_residuals when requested).
std::vector<NamedTable> compute_walk(const RunConfig& cfg);

/// One row per grid point in (theta1, theta2) index order. `threads` <= 0
/// means hardware concurrency.
Table compute_sweep(const SweepConfig& cfg, int threads);

/// Preset datasets for figures 1..9; steps_override replaces the preset length.
std::vector<NamedTable> compute_figure(int id, std::optional<Site> steps_override, int threads);

/// Exact bands next to the continuum formulas, plus a one-row summary.
std::vector<NamedTable> compute_dispersion(const ScheduleSpec& schedule, int k_count);

struct CompareResult {
  double max_diff = 0.0;
  std::size_t matched = 0;
};

/// Checks fine(scale*x, scale*t) == coarse(x, t) for every coarse row and
/// that the fine rows off the scaled sublattice carry no probability.
/// Tables need columns step, x, p.
CompareResult compare_distributions(const Table& coarse, const Table& fine, int scale);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> run_selfcheck();

/// Writes every table plus <meta_stem>.meta.json; returns the written paths.
std::vector<std::string> write_named(const std::string& dir, const std::string& command,
                                     const std::string& meta_stem,
                                     const std::vector<NamedTable>& tables,
                                     const std::string& format, const nlohmann::json& config,
                                     double wall_seconds);

}  // namespace qwalk::app
