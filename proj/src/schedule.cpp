#include "qwalk/schedule.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qwalk {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

CoinSchedule CoinSchedule::homogeneous(double theta) { return CoinSchedule(Homogeneous{theta}); }

CoinSchedule CoinSchedule::n_period(int n, double theta1, double theta2) {
  if (n < 2) throw std::invalid_argument("n-period schedule needs n >= 2");
  return CoinSchedule(NPeriod{n, theta1, theta2});
}

CoinSchedule CoinSchedule::explicit_list(std::vector<double> thetas) {
  return CoinSchedule(Explicit{std::move(thetas)});
}

CoinSchedule CoinSchedule::split_step(double theta1, double theta2) {
  return CoinSchedule(SplitStep{theta1, theta2});
}

CoinSchedule::Kind CoinSchedule::kind() const {
  return std::visit(Overloaded{
                        [](const Homogeneous&) { return Kind::homogeneous; },
                        [](const NPeriod&) { return Kind::n_period; },
                        [](const Explicit&) { return Kind::explicit_list; },
                        [](const SplitStep&) { return Kind::split_step; },
                    },
                    rule_);
}

CoinAngle CoinSchedule::coin_for_step(Site s) const {
  if (s < 1) throw std::out_of_range("steps are numbered from 1");
  return std::visit(
      Overloaded{
          [](const Homogeneous& h) { return CoinAngle{h.theta}; },
          [s](const NPeriod& p) {
            return CoinAngle{s % p.n == 0 ? p.theta2 : p.theta1};
          },
          [s](const Explicit& e) {
            if (static_cast<std::size_t>(s) > e.thetas.size()) {
              throw std::out_of_range("explicit schedule shorter than requested step " +
                                      std::to_string(s));
            }
            return CoinAngle{e.thetas[static_cast<std::size_t>(s - 1)]};
          },
          [](const SplitStep&) -> CoinAngle {
            throw std::logic_error("split-step schedules apply two coins per step");
          },
      },
      rule_);
}

std::pair<CoinAngle, CoinAngle> CoinSchedule::split_angles() const {
  const auto* ss = std::get_if<SplitStep>(&rule_);
  if (ss == nullptr) throw std::logic_error("not a split-step schedule");
  return {CoinAngle{ss->theta1}, CoinAngle{ss->theta2}};
}

int CoinSchedule::period_steps() const {
  if (const auto* p = std::get_if<NPeriod>(&rule_)) return p->n;
  return 1;
}

std::pair<double, double> CoinSchedule::angles() const {
  return std::visit(Overloaded{
                        [](const Homogeneous& h) { return std::pair{h.theta, h.theta}; },
                        [](const NPeriod& p) { return std::pair{p.theta1, p.theta2}; },
                        [](const Explicit& e) {
                          const double a = e.thetas.empty() ? 0.0 : e.thetas.front();
                          const double b = e.thetas.size() > 1 ? e.thetas[1] : a;
                          return std::pair{a, b};
                        },
                        [](const SplitStep& s) { return std::pair{s.theta1, s.theta2}; },
                    },
                    rule_);
}

std::string CoinSchedule::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const Homogeneous& h) { out << "homogeneous(theta=" << h.theta << ")"; },
                 [&](const NPeriod& p) {
                   out << "n_period(n=" << p.n << ", theta1=" << p.theta1
                       << ", theta2=" << p.theta2 << ")";
                 },
                 [&](const Explicit& e) { out << "explicit(" << e.thetas.size() << " angles)"; },
                 [&](const SplitStep& s) {
                   out << "split_step(theta1=" << s.theta1 << ", theta2=" << s.theta2 << ")";
                 },
             },
             rule_);
  return out.str();
}

const WalkerState& Trajectory::at_step(Site s) const {
  const auto it = std::find_if(snapshots.begin(), snapshots.end(),
                               [s](const WalkerState& w) { return w.step_count() == s; });
  if (it == snapshots.end()) {
    throw std::out_of_range("no snapshot at step " + std::to_string(s));
  }
  return *it;
}

void advance(WalkerState& state, const CoinSchedule& schedule, Site steps) {
  if (schedule.kind() == CoinSchedule::Kind::split_step) {
    const auto [a, b] = schedule.split_angles();
    for (Site i = 0; i < steps; ++i) split_step(state, a, b);
    return;
  }
  for (Site i = 0; i < steps; ++i) {
    full_step(state, schedule.coin_for_step(state.step_count() + 1));
  }
}

void evolve_observed(const InitialCoinState& coin, const PositionProfile& profile,
                     const CoinSchedule& schedule, Site t,
                     const std::function<void(const WalkerState&)>& observe) {
  if (t < 0) throw std::invalid_argument("step count must be >= 0");
  WalkerState state = make_state(coin, profile, t);
  observe(state);
  for (Site s = 0; s < t; ++s) {
    advance(state, schedule, 1);
    observe(state);
  }
}

Trajectory evolve(const InitialCoinState& coin, const PositionProfile& profile,
                  const CoinSchedule& schedule, Site t, std::span<const Site> record_at) {
  std::vector<Site> wanted(record_at.begin(), record_at.end());
  wanted.push_back(t);
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  if (wanted.front() < 0 || wanted.back() > t) {
    throw std::invalid_argument("record steps must lie in [0, t]");
  }

  Trajectory traj{schedule, profile, {}};
  traj.snapshots.reserve(wanted.size());
  auto next = wanted.begin();
  evolve_observed(coin, profile, schedule, t, [&](const WalkerState& state) {
    if (next != wanted.end() && *next == state.step_count()) {
      traj.snapshots.push_back(state);
      ++next;
    }
  });
  return traj;
}

Trajectory evolve_all(const InitialCoinState& coin, const PositionProfile& profile,
                      const CoinSchedule& schedule, Site t) {
  std::vector<Site> all(static_cast<std::size_t>(t + 1));
  for (Site s = 0; s <= t; ++s) all[static_cast<std::size_t>(s)] = s;
  return evolve(coin, profile, schedule, t, all);
}

}  // namespace qwalk
