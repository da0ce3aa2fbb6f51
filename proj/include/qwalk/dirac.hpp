#pragma once

// Verification of walk trajectories against their defining recurrences and
// against the first-order continuum (Dirac-type) equations.

#include <string>

#include "qwalk/linalg.hpp"
#include "qwalk/schedule.hpp"

namespace qwalk {

struct ResidualReport {
  double max_abs = 0.0;
  double l2 = 0.0;
  Site x = 0;  // location of max_abs
  Site t = 0;  // step of the earlier snapshot of the offending pair
  std::size_t samples = 0;
};

/// Raised when snapshots are not spaced as the recurrence requires.
class SnapshotSpacingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RecurrenceFamily {
  enum class Kind {
    one_period,           // psi(t+1) from psi(t), coin theta1
    two_period_pairstep,  // psi(t+1) from psi(t-1), coins theta1 then theta2, x +/- 2
    combined_step,        // psi(t+1) from psi(t), coins theta1 then theta2, x +/- 1
    split_step,           // same recurrence as combined_step
  };
  Kind kind = Kind::one_period;
  double theta1 = 0.0;
  double theta2 = 0.0;

  static RecurrenceFamily one_period(double theta) { return {Kind::one_period, theta, theta}; }
  static RecurrenceFamily two_period_pairstep(double t1, double t2) {
    return {Kind::two_period_pairstep, t1, t2};
  }
  static RecurrenceFamily combined_step(double t1, double t2) {
    return {Kind::combined_step, t1, t2};
  }
  static RecurrenceFamily split_step(double t1, double t2) { return {Kind::split_step, t1, t2}; }
};

/// Evaluates the recurrence at every site whose stencil lies in the window,
/// over every usable snapshot pair. one_period / combined_step / split_step
/// use pairs (t, t+1); two_period_pairstep uses (t-1, t+1) with t-1 even,
/// the pair over which theta1 then theta2 act. Throws SnapshotSpacingError
/// when no usable pair exists.
ResidualReport recurrence_residual(const Trajectory& trajectory, RecurrenceFamily family);

/// Keeps snapshots at even steps and even sites of a two-period trajectory
/// and relabels them x -> x/2, t -> t/2: the effective one-step lattice.
Trajectory decimate_pair_steps(const Trajectory& trajectory);

struct PdeModel {
  enum class Kind { one_period, two_period };
  Kind kind = Kind::one_period;
  double theta1 = 0.0;
  double theta2 = 0.0;

  static PdeModel one_period(double theta) { return {Kind::one_period, theta, theta}; }
  static PdeModel two_period(double t1, double t2) { return {Kind::two_period, t1, t2}; }

  /// d/dt psi = velocity() d/dx psi + drift() psi
  Mat2 velocity() const;
  Mat2 drift() const;
};

/// Residual of the continuum equation with forward differences in t and
/// central differences in x, normalized by the l2 norm of the field over the
/// same samples. Rejects point-profile trajectories and windows narrower than
/// three sites.
ResidualReport differential_residual(const Trajectory& trajectory, PdeModel model);

// ---------------------------------------------------------------------------

class DiracRegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DiracConfig {
  enum class Regime { gapped, gapless_general, gapless_diagonal };
  Regime regime = Regime::gapped;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double mass_coefficient = 0.0;
  Mat2 velocity_matrix;
};

inline constexpr double kGaplessTolerance = 1e-12;
inline constexpr double kRegimeAngleTolerance = 1e-10;
/// Largest |theta| accepted where a regime calls for a small angle.
inline constexpr double kSmallAngleLimit = 0.3;

/// gapped: theta1 = 0, small theta2 -> mass theta2, velocity
///   (1 - theta2^2/2) diag(1, -1).
/// gapless_general: cos(theta1 + theta2) = 1 -> mass 0, velocity
///   cos theta2 [[cos theta1, -i sin theta1], [i sin theta1, -cos theta1]].
/// gapless_diagonal: small theta1, theta2 = -theta1 -> mass 0, velocity
///   cos theta2 diag(1, -1).
DiracConfig dirac_config(DiracConfig::Regime regime, double theta1, double theta2);

/// Predicted light-cone radius after t steps: t |cos theta1 cos theta2|
/// for the gapless regimes, t |cos theta2| for the gapped one.
double dirac_spread_check(const DiracConfig& config, double t);

std::string regime_name(DiracConfig::Regime regime);

}  // namespace qwalk
