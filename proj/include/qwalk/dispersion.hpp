#pragma once

// Momentum-space picture of one effective step.
//
// Convention: psi(k) = sum_x exp(-ikx) psi(x). The full shift becomes
// D(k) = diag(e^{ik}, e^{-ik}); the half shifts D-(k) = diag(e^{ik}, 1) and
// D+(k) = diag(1, e^{-ik}). Eigenvalues of the Bloch matrix are written
// exp(-i omega); group velocities are d omega / dk.

#include <span>
#include <vector>

#include "qwalk/linalg.hpp"
#include "qwalk/schedule.hpp"

namespace qwalk {

struct BlochMatrix {
  double k = 0.0;
  Mat2 m;
};

/// One effective step: homogeneous D C(theta); n-period W_n ... W_1 with
/// W_s = D C(coin_for_step(s)); split-step D+ C(theta2) D- C(theta1).
/// Throws std::invalid_argument for explicit schedules.
BlochMatrix bloch_matrix(const CoinSchedule& schedule, double k);

/// dM/dk of bloch_matrix, by the product rule on the shift factors.
Mat2 bloch_derivative(const CoinSchedule& schedule, double k);

/// Eigenphases and group velocities at one k, unordered.
struct LocalSpectrum {
  std::array<double, 2> omega{};     // in (-pi, pi]
  std::array<double, 2> velocity{};  // per effective step
  bool degenerate = false;
};

inline constexpr double kBandGapTolerance = 1e-9;

LocalSpectrum local_spectrum(const CoinSchedule& schedule, double k);

struct SpectralSample {
  double k = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double v_plus = 0.0;
  double v_minus = 0.0;
  bool crossing = false;  // eigenphase gap below kBandGapTolerance
};

struct SpectralCurve {
  std::vector<SpectralSample> samples;
  int period_steps = 1;

  bool has_crossing() const;
};

/// count points spanning [-pi, pi] inclusive.
std::vector<double> uniform_k_grid(std::size_t count = 4097);

/// Bands tracked by continuity along the (sorted) grid; omega values are
/// unwrapped along each band and lie in (-pi, pi] at the middle sample. The
/// band heading into the upper half plane at the first sample is
/// "plus".
SpectralCurve exact_dispersion(const CoinSchedule& schedule, std::span<const double> k_grid);

struct GroupSpeed {
  double per_step = 0.0;            // light-cone speed in sites per walk step
  double per_effective_step = 0.0;  // |d omega / dk| maximum
  double k = 0.0;                   // maximizer
  bool crossing = false;            // a band touching was met on the grid
};

/// Grid search followed by golden-section refinement around the maximizer.
GroupSpeed max_group_speed(const CoinSchedule& schedule, std::size_t grid_points = 4097);

// ---------------------------------------------------------------------------
// Continuum-limit formulas. These are the linearized dispersion relations
// obtained from the first-order differential form of the walk; they are
// predictors, not exact results (compare max_group_speed).

enum class ContinuumFamily { one, two, three, n };

struct ContinuumModel {
  ContinuumFamily family = ContinuumFamily::one;
  double theta1 = 0.0;
  double theta2 = 0.0;
  int n = 1;
};

/// homogeneous -> one, n=2 and split-step -> two, n=3 -> three, n>3 -> n.
ContinuumModel continuum_model(const CoinSchedule& schedule);

/// All branch velocities, ascending:
///   one   -> {-cos t1, +cos t1}
///   two   -> {-cos t1 cos t2, +cos t1 cos t2}
///   three -> {+/- (cos t1 +/- cos t1 cos t2) / 2}
///   n     -> {+/- ((n-2) cos t1 +/- cos t1 cos t2) / (n-1)}
std::vector<double> continuum_group_velocities(const ContinuumModel& model);

/// Largest |v| of continuum_group_velocities.
double continuum_max_group_speed(const ContinuumModel& model);

/// Real part of the linear continuum dispersion for the +/- branch:
/// omega = -/+ k |v|max.
double continuum_omega(const ContinuumModel& model, double k, int branch_sign);

/// Imaginary constant of the continuum dispersion: cos(t1 + t2) - 1 for
/// two-period, cos t - 1 for one-period; zero for three/n where no
/// closed form is available.
double continuum_damping(const ContinuumModel& model);

/// Spread radius after t steps:
///   one   -> t |cos t1|
///   two   -> t |cos t1 cos t2|
///   three -> (t/2)(|cos t1| + |cos t1 cos t2|)
///   n     -> (t/(n-1))((n-2)|cos t1| + |cos t1 cos t2|)
double spread_bound(const ContinuumModel& model, double t);

}  // namespace qwalk
