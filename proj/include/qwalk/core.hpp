#pragma once

// Walker state and the elementary unitaries of the discrete-time walk on Z.
//
// Coin basis is (down, up) = (|0>, |1>). The full shift moves the down
// component one site left and the up component one site right:
//   down(x) <- down(x+1),  up(x) <- up(x-1).
// The half shifts S- and S+ move only one of the two components.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qwalk/linalg.hpp"

namespace qwalk {

using Site = std::int64_t;

/// Raised when a shift would push a nonzero amplitude outside the window.
class WindowOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoinAngle {
  double theta = 0.0;
};

/// cos(delta)|0> + exp(-i eta) sin(delta)|1>
struct InitialCoinState {
  double delta = 0.0;
  double eta = 0.0;

  Spinor spinor() const;
};

/// Position part of the initial state.
struct PositionProfile {
  enum class Kind { point, gaussian };

  Kind kind = Kind::point;
  Site center = 0;
  double width = 0.0;  // gaussian only, lattice units

  static PositionProfile point(Site center = 0) { return {Kind::point, center, 0.0}; }
  static PositionProfile gaussian(double width, Site center = 0);

  /// Sites with nonzero amplitude lie within center +/- support_radius().
  Site support_radius() const;
};

/// Dense amplitudes over the closed window [x_min, x_max].
class WalkerState {
 public:
  WalkerState() = default;
  WalkerState(Site x_min, Site x_max);

  Site x_min() const { return x_min_; }
  Site x_max() const { return x_max_; }
  std::size_t size() const { return down_.size(); }
  bool contains(Site x) const { return x >= x_min_ && x <= x_max_; }

  Site step_count() const { return step_count_; }
  void set_step_count(Site t) { step_count_ = t; }

  std::span<Complex> down() { return down_; }
  std::span<const Complex> down() const { return down_; }
  std::span<Complex> up() { return up_; }
  std::span<const Complex> up() const { return up_; }

  /// Amplitudes at x; zero outside the window.
  Spinor at(Site x) const;
  void set(Site x, Spinor s);

  /// Sum over sites of |down|^2 + |up|^2.
  double norm_squared() const;

  bool operator==(const WalkerState&) const = default;

 private:
  std::size_t index(Site x) const { return static_cast<std::size_t>(x - x_min_); }

  Site x_min_ = 0;
  Site x_max_ = -1;
  Site step_count_ = 0;
  std::vector<Complex> down_;
  std::vector<Complex> up_;
};

/// Builds the product state spinor (x) profile on a window wide enough for
/// `planned_steps` full or split steps.
WalkerState make_state(const InitialCoinState& coin, const PositionProfile& profile,
                       Site planned_steps);

/// [[cos t, -i sin t], [-i sin t, cos t]]
Mat2 make_coin(CoinAngle angle);

void apply_coin(WalkerState& state, CoinAngle angle);
void apply_shift(WalkerState& state);
void apply_half_shift_minus(WalkerState& state);
void apply_half_shift_plus(WalkerState& state);

/// Coin then shift; increments the step count.
void full_step(WalkerState& state, CoinAngle angle);

/// S+ (C(theta2) x I) S- (C(theta1) x I); increments the step count.
void split_step(WalkerState& state, CoinAngle theta1, CoinAngle theta2);

}  // namespace qwalk
