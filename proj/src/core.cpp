#include "qwalk/core.hpp"

#include <algorithm>
#include <cmath>

namespace qwalk {

namespace {

// Amplitude at the cutoff is exp(-36) of the peak, below double resolution.
constexpr double kGaussianCutoffWidths = 12.0;

}  // namespace

Spinor InitialCoinState::spinor() const {
  return {std::cos(delta), std::polar(1.0, -eta) * std::sin(delta)};
}

PositionProfile PositionProfile::gaussian(double width, Site center) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("gaussian profile width must be positive");
  }
  return {Kind::gaussian, center, width};
}

Site PositionProfile::support_radius() const {
  if (kind == Kind::point) return 0;
  return static_cast<Site>(std::ceil(kGaussianCutoffWidths * width));
}

WalkerState::WalkerState(Site x_min, Site x_max)
    : x_min_(x_min),
      x_max_(x_max),
      down_(static_cast<std::size_t>(x_max - x_min + 1)),
      up_(static_cast<std::size_t>(x_max - x_min + 1)) {
  if (x_max < x_min) throw std::invalid_argument("empty walker window");
}

Spinor WalkerState::at(Site x) const {
  if (!contains(x)) return {};
  return {down_[index(x)], up_[index(x)]};
}

void WalkerState::set(Site x, Spinor s) {
  if (!contains(x)) throw WindowOverflow("site outside walker window");
  down_[index(x)] = s.down;
  up_[index(x)] = s.up;
}

double WalkerState::norm_squared() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < down_.size(); ++i) {
    sum += std::norm(down_[i]) + std::norm(up_[i]);
  }
  return sum;
}

WalkerState make_state(const InitialCoinState& coin, const PositionProfile& profile,
                       Site planned_steps) {
  if (planned_steps < 0) throw std::invalid_argument("planned steps must be >= 0");
  const Site reach = profile.support_radius() + planned_steps;
  WalkerState state(profile.center - reach, profile.center + reach);
  const Spinor s = coin.spinor();

  if (profile.kind == PositionProfile::Kind::point) {
    state.set(profile.center, s);
    return state;
  }

  // amplitude ~ exp(-(x-c)^2 / 4w^2), so |amplitude|^2 has standard deviation w
  const Site r = profile.support_radius();
  std::vector<double> amp(static_cast<std::size_t>(2 * r + 1));
  double total = 0.0;
  for (Site dx = -r; dx <= r; ++dx) {
    const double g = std::exp(-static_cast<double>(dx * dx) / (4.0 * profile.width * profile.width));
    amp[static_cast<std::size_t>(dx + r)] = g;
    total += g * g;
  }
  const double scale = 1.0 / std::sqrt(total);
  for (Site dx = -r; dx <= r; ++dx) {
    const double g = amp[static_cast<std::size_t>(dx + r)] * scale;
    state.set(profile.center + dx, {g * s.down, g * s.up});
  }
  return state;
}

Mat2 make_coin(CoinAngle angle) {
  const double c = std::cos(angle.theta);
  const Complex s{0.0, -std::sin(angle.theta)};
  return {c, s, s, c};
}

void apply_coin(WalkerState& state, CoinAngle angle) {
  const Mat2 coin = make_coin(angle);
  auto down = state.down();
  auto up = state.up();
  for (std::size_t i = 0; i < down.size(); ++i) {
    const Spinor out = coin.apply({down[i], up[i]});
    down[i] = out.down;
    up[i] = out.up;
  }
}

void apply_half_shift_minus(WalkerState& state) {
  auto down = state.down();
  if (down.front() != Complex{}) {
    throw WindowOverflow("down component would leave the window on the left");
  }
  std::rotate(down.begin(), down.begin() + 1, down.end());
}

void apply_half_shift_plus(WalkerState& state) {
  auto up = state.up();
  if (up.back() != Complex{}) {
    throw WindowOverflow("up component would leave the window on the right");
  }
  std::rotate(up.rbegin(), up.rbegin() + 1, up.rend());
}

void apply_shift(WalkerState& state) {
  // check both edges before mutating anything
  if (state.down().front() != Complex{} || state.up().back() != Complex{}) {
    throw WindowOverflow("shift would move amplitude outside the window");
  }
  apply_half_shift_minus(state);
  apply_half_shift_plus(state);
}

void full_step(WalkerState& state, CoinAngle angle) {
  apply_coin(state, angle);
  apply_shift(state);
  state.set_step_count(state.step_count() + 1);
}

void split_step(WalkerState& state, CoinAngle theta1, CoinAngle theta2) {
  apply_coin(state, theta1);
  apply_half_shift_minus(state);
  apply_coin(state, theta2);
  apply_half_shift_plus(state);
  state.set_step_count(state.step_count() + 1);
}

}  // namespace qwalk
