#pragma once

// Coin schedules and multi-step evolution.
//
// Steps are 1-based: step s applies the s-th walk operator. An n-period
// schedule applies theta2 when s is a multiple of n and theta1 otherwise, so a
// two-period run is W(theta2) W(theta1) W(theta2) W(theta1) ... and the
// three-period cycle is W(theta2) W(theta1) W(theta1).

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

class CoinSchedule {
 public:
  struct Homogeneous {
    double theta;
  };
  struct NPeriod {
    int n;
    double theta1;
    double theta2;
  };
  struct Explicit {
    std::vector<double> thetas;
  };
  struct SplitStep {
    double theta1;
    double theta2;
  };
  using Rule = std::variant<Homogeneous, NPeriod, Explicit, SplitStep>;

  enum class Kind { homogeneous, n_period, explicit_list, split_step };

  static CoinSchedule homogeneous(double theta);
  /// Throws std::invalid_argument for n < 2.
  static CoinSchedule n_period(int n, double theta1, double theta2);
  static CoinSchedule explicit_list(std::vector<double> thetas);
  static CoinSchedule split_step(double theta1, double theta2);

  Kind kind() const;
  const Rule& rule() const { return rule_; }

  /// Coin of 1-based step s. Throws std::out_of_range for s < 1 or past the
  /// end of an explicit list; std::logic_error for split-step schedules,
  /// which use two coins per step (see split_angles()).
  CoinAngle coin_for_step(Site s) const;

  /// (theta1, theta2) of a split-step schedule.
  std::pair<CoinAngle, CoinAngle> split_angles() const;

  /// Walk steps spanned by one effective (Bloch) step: n for n-period,
  /// 1 otherwise.
  int period_steps() const;

  /// The coin parameters as (theta1, theta2); homogeneous repeats theta.
  std::pair<double, double> angles() const;

  std::string describe() const;

 private:
  explicit CoinSchedule(Rule rule) : rule_(std::move(rule)) {}
  Rule rule_;
};

/// Full states captured during one evolve() call, ordered by step.
struct Trajectory {
  CoinSchedule schedule = CoinSchedule::homogeneous(0.0);
  PositionProfile profile;
  std::vector<WalkerState> snapshots;

  /// Snapshot with the given step count; throws std::out_of_range if absent.
  const WalkerState& at_step(Site s) const;
  const WalkerState& final_state() const { return snapshots.back(); }
};

/// Advances `state` by `steps` steps of `schedule`, continuing the 1-based
/// step numbering from state.step_count().
void advance(WalkerState& state, const CoinSchedule& schedule, Site steps);

/// Evolves the initial product state for t steps, calling `observe` on the
/// state at t = 0 and after every step.
void evolve_observed(const InitialCoinState& coin, const PositionProfile& profile,
                     const CoinSchedule& schedule, Site t,
                     const std::function<void(const WalkerState&)>& observe);

/// Snapshots at record_at united with {t}. Entries above t are rejected.
Trajectory evolve(const InitialCoinState& coin, const PositionProfile& profile,
                  const CoinSchedule& schedule, Site t, std::span<const Site> record_at = {});

/// Every step 0..t recorded.
Trajectory evolve_all(const InitialCoinState& coin, const PositionProfile& profile,
                      const CoinSchedule& schedule, Site t);

}  // namespace qwalk
