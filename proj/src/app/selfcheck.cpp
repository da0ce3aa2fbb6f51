#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qwalk/analysis.hpp"
#include "qwalk/app/commands.hpp"
#include "qwalk/dirac.hpp"
#include "qwalk/dispersion.hpp"

namespace qwalk::app {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

CheckResult check(std::string name, bool pass, double measured, double tol) {
  return {std::move(name), pass, "measured " + fmt(measured) + ", tolerance " + fmt(tol)};
}

WalkerState random_state(std::mt19937_64& rng, Site half) {
  std::normal_distribution<double> g;
  WalkerState s(-half, half);
  for (Site x = -half / 2; x <= half / 2; ++x) s.set(x, {{g(rng), g(rng)}, {g(rng), g(rng)}});
  const double n = std::sqrt(s.norm_squared());
  for (auto& a : s.down()) a /= n;
  for (auto& a : s.up()) a /= n;
  return s;
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> angle(-kPi, kPi);

  double unitarity = 0.0;
  for (int i = 0; i <= 64; ++i) {
    const Mat2 c = make_coin({-kPi + 2 * kPi * i / 64});
    unitarity = std::max(unitarity, max_abs(c * c.adjoint() - Mat2::identity()));
  }
  out.push_back(check("coin unitarity", unitarity < 1e-14, unitarity, 1e-14));

  double drift = 0.0;
  const std::vector<CoinSchedule> schedules{
      CoinSchedule::homogeneous(angle(rng)), CoinSchedule::n_period(2, angle(rng), angle(rng)),
      CoinSchedule::n_period(3, angle(rng), angle(rng)),
      CoinSchedule::n_period(7, angle(rng), angle(rng)),
      CoinSchedule::split_step(angle(rng), angle(rng))};
  for (const auto& s : schedules) {
    evolve_observed({angle(rng), angle(rng)}, PositionProfile::point(), s, 500,
                    [&](const WalkerState& w) { drift = std::max(drift, std::abs(w.norm_squared() - 1.0)); });
  }
  out.push_back(check("norm conservation, 500 steps", drift < 1e-12, drift, 1e-12));

  {
    WalkerState a = random_state(rng, 40);
    WalkerState b = a;
    apply_half_shift_minus(a);
    apply_half_shift_plus(a);
    apply_shift(b);
    double diff = 0.0;
    for (Site x = a.x_min(); x <= a.x_max(); ++x) {
      diff = std::max({diff, std::abs(a.at(x).down - b.at(x).down), std::abs(a.at(x).up - b.at(x).up)});
    }
    out.push_back(check("half shifts compose to the full shift", diff == 0.0, diff, 0.0));
  }

  {
    const double t1 = 0.7, t2 = -1.1;
    const InitialCoinState coin{0.4, 0.9};
    double worst = 0.0;
    worst = std::max(worst, recurrence_residual(evolve_all(coin, PositionProfile::point(), CoinSchedule::homogeneous(t1), 60),
                                                RecurrenceFamily::one_period(t1)).max_abs);
    worst = std::max(worst, recurrence_residual(evolve_all(coin, PositionProfile::point(), CoinSchedule::n_period(2, t1, t2), 60),
                                                RecurrenceFamily::two_period_pairstep(t1, t2)).max_abs);
    worst = std::max(worst, recurrence_residual(evolve_all(coin, PositionProfile::point(), CoinSchedule::split_step(t1, t2), 60),
                                                RecurrenceFamily::split_step(t1, t2)).max_abs);
    out.push_back(check("recurrence residuals", worst <= 1e-13, worst, 1e-13));
  }

  {
    const double t1 = kPi / 5, t2 = 1.3;
    const InitialCoinState coin{kPi / 4, 0.3};
    const Trajectory ss = evolve(coin, PositionProfile::point(), CoinSchedule::split_step(t1, t2), 50);
    const Trajectory tp = evolve(coin, PositionProfile::point(), CoinSchedule::n_period(2, t1, t2), 100);
    double diff = 0.0;
    const WalkerState& a = ss.final_state();
    const WalkerState& b = tp.final_state();
    for (Site x = a.x_min(); x <= a.x_max(); ++x) {
      if (!b.contains(2 * x)) continue;
      diff = std::max({diff, std::abs(a.at(x).down - b.at(2 * x).down), std::abs(a.at(x).up - b.at(2 * x).up)});
    }
    out.push_back(check("split-step equals two-period on even sites", diff <= 1e-12, diff, 1e-12));
  }

  {
    double worst = 0.0;
    for (const auto& s : schedules) {
      for (double k : uniform_k_grid(65)) {
        const Mat2 m = bloch_matrix(s, k).m;
        worst = std::max(worst, max_abs(m * m.adjoint() - Mat2::identity()));
      }
    }
    out.push_back(check("Bloch matrix unitarity", worst < 1e-12, worst, 1e-12));
  }

  {
    double lo = 1.0, hi = 0.0;
    Site overshoot = 0;
    for (const auto& s : schedules) {
      evolve_observed({angle(rng), angle(rng)}, PositionProfile::point(), s, 200, [&](const WalkerState& w) {
        const double e = entanglement_entropy(reduced_coin_density(w));
        lo = std::min(lo, e);
        hi = std::max(hi, e);
        overshoot = std::max(overshoot, support_radius(probability_distribution(w), std::numeric_limits<double>::denorm_min()) - w.step_count());
      });
    }
    out.push_back({"entropy within [0, 1]", lo >= 0.0 && hi <= 1.0,
                   "range [" + fmt(lo) + ", " + fmt(hi) + "]"});
    out.push_back({"light cone |x| <= t", overshoot <= 0, "overshoot " + std::to_string(overshoot)});
  }
  return out;
}

}  // namespace qwalk::app
