#include "qwalk/dirac.hpp"

#include <cmath>

namespace qwalk {

namespace {

struct Accumulator {
  ResidualReport report;
  double sum_sq = 0.0;

  void add(Complex r, Site x, Site t) {
    const double a = std::abs(r);
    sum_sq += a * a;
    ++report.samples;
    if (a > report.max_abs) {
      report.max_abs = a;
      report.x = x;
      report.t = t;
    }
  }
  ResidualReport finish(double scale = 1.0) {
    report.l2 = std::sqrt(sum_sq) / scale;
    report.max_abs /= scale;
    return report;
  }
};

// psi(x, t+1) predicted by one coin-then-shift with the given coin.
Spinor one_period_step(const WalkerState& s, Site x, const Mat2& c) {
  const Spinor right = s.at(x + 1);
  const Spinor left = s.at(x - 1);
  return {c.a * right.down + c.b * right.up, c.c * left.down + c.d * left.up};
}

// Combined recurrence with neighbour offset `reach` (1 for the effective
// lattice, 2 for the raw two-period pair step).
Spinor combined_step(const WalkerState& s, Site x, Site reach, double t1, double t2) {
  const double c1 = std::cos(t1), s1 = std::sin(t1);
  const double c2 = std::cos(t2), s2 = std::sin(t2);
  const Spinor r = s.at(x + reach);
  const Spinor m = s.at(x);
  const Spinor l = s.at(x - reach);
  const Complex down = c2 * (c1 * r.down - kI * s1 * r.up) - kI * s2 * (-kI * s1 * m.down + c1 * m.up);
  const Complex up = -kI * s2 * (c1 * m.down - kI * s1 * m.up) + c2 * (-kI * s1 * l.down + c1 * l.up);
  return {down, up};
}

}  // namespace

ResidualReport recurrence_residual(const Trajectory& trajectory, RecurrenceFamily family) {
  using Kind = RecurrenceFamily::Kind;
  const Site gap = family.kind == Kind::two_period_pairstep ? 2 : 1;
  const Site reach = family.kind == Kind::two_period_pairstep ? 2 : 1;
  const Mat2 coin = make_coin(CoinAngle{family.theta1});

  Accumulator acc;
  std::size_t pairs = 0;
  const auto& snaps = trajectory.snapshots;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const WalkerState& before = snaps[i];
    if (family.kind == Kind::two_period_pairstep && before.step_count() % 2 != 0) continue;
    const Site target = before.step_count() + gap;
    const WalkerState* after = nullptr;
    for (std::size_t j = i + 1; j < snaps.size(); ++j) {
      if (snaps[j].step_count() == target) {
        after = &snaps[j];
        break;
      }
    }
    if (after == nullptr) continue;
    ++pairs;
    for (Site x = after->x_min() + reach; x <= after->x_max() - reach; ++x) {
      const Spinor predicted =
          family.kind == Kind::one_period
              ? one_period_step(before, x, coin)
              : combined_step(before, x, reach, family.theta1, family.theta2);
      const Spinor actual = after->at(x);
      acc.add(actual.down - predicted.down, x, before.step_count());
      acc.add(actual.up - predicted.up, x, before.step_count());
    }
  }
  if (pairs == 0) {
    throw SnapshotSpacingError("trajectory has no snapshot pair " + std::to_string(gap) +
                               " step(s) apart for this recurrence");
  }
  return acc.finish();
}

Trajectory decimate_pair_steps(const Trajectory& trajectory) {
  Trajectory out{trajectory.schedule, trajectory.profile, {}};
  if (out.profile.kind == PositionProfile::Kind::gaussian) out.profile.width /= 2.0;
  out.profile.center = trajectory.profile.center / 2;
  for (const WalkerState& s : trajectory.snapshots) {
    if (s.step_count() % 2 != 0) continue;
    // first even site >= x_min, last even site <= x_max
    const Site lo = s.x_min() % 2 == 0 ? s.x_min() : s.x_min() + 1;
    const Site hi = s.x_max() % 2 == 0 ? s.x_max() : s.x_max() - 1;
    if (hi < lo) throw std::invalid_argument("window holds no even site");
    WalkerState d(lo / 2, hi / 2);
    for (Site x = lo; x <= hi; x += 2) d.set(x / 2, s.at(x));
    d.set_step_count(s.step_count() / 2);
    out.snapshots.push_back(std::move(d));
  }
  if (out.snapshots.empty()) throw std::invalid_argument("no even-step snapshots to decimate");
  return out;
}

Mat2 PdeModel::velocity() const {
  const double c1 = std::cos(theta1), s1 = std::sin(theta1);
  const double scale = kind == Kind::two_period ? std::cos(theta2) : 1.0;
  return Complex{scale} * Mat2{c1, -kI * s1, kI * s1, -c1};
}

Mat2 PdeModel::drift() const {
  const double phi = kind == Kind::two_period ? theta1 + theta2 : theta1;
  const Complex diag = std::cos(phi) - 1.0;
  const Complex off = -kI * std::sin(phi);
  return {diag, off, off, diag};
}

ResidualReport differential_residual(const Trajectory& trajectory, PdeModel model) {
  if (trajectory.profile.kind == PositionProfile::Kind::point) {
    throw std::invalid_argument("continuum residuals need a smooth (gaussian) packet");
  }
  const Mat2 vel = model.velocity();
  const Mat2 drift = model.drift();

  Accumulator acc;
  double field_sq = 0.0;
  std::size_t pairs = 0;
  const auto& snaps = trajectory.snapshots;
  for (std::size_t i = 0; i + 1 < snaps.size(); ++i) {
    const WalkerState& now = snaps[i];
    const WalkerState& next = snaps[i + 1];
    if (next.step_count() != now.step_count() + 1) continue;
    if (now.size() < 3) throw std::invalid_argument("window too small for central differences");
    ++pairs;
    for (Site x = now.x_min() + 1; x <= now.x_max() - 1; ++x) {
      const Spinor psi = now.at(x);
      const Spinor fwd = next.at(x);
      const Spinor r = now.at(x + 1);
      const Spinor l = now.at(x - 1);
      const Spinor dx{0.5 * (r.down - l.down), 0.5 * (r.up - l.up)};
      const Spinor a = vel.apply(dx);
      const Spinor b = drift.apply(psi);
      acc.add(fwd.down - psi.down - a.down - b.down, x, now.step_count());
      acc.add(fwd.up - psi.up - a.up - b.up, x, now.step_count());
      field_sq += std::norm(psi.down) + std::norm(psi.up);
    }
  }
  if (pairs == 0) throw SnapshotSpacingError("differential residual needs consecutive snapshots");
  return acc.finish(std::sqrt(field_sq));
}

DiracConfig dirac_config(DiracConfig::Regime regime, double theta1, double theta2) {
  DiracConfig cfg{regime, theta1, theta2, 0.0, Mat2{}};
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw DiracRegimeError(what);
  };
  switch (regime) {
    case DiracConfig::Regime::gapped: {
      require(std::abs(theta1) <= kRegimeAngleTolerance, "gapped regime needs theta1 = 0");
      require(std::abs(theta2) <= kSmallAngleLimit, "gapped regime needs a small theta2");
      const double speed = 1.0 - theta2 * theta2 / 2.0;
      // within the gapless tolerance the configuration is massless
      const bool massless = std::abs(std::cos(theta2) - 1.0) < kGaplessTolerance;
      cfg.mass_coefficient = massless ? 0.0 : theta2;
      cfg.velocity_matrix = Mat2::diag(speed, -speed);
      break;
    }
    case DiracConfig::Regime::gapless_general: {
      require(std::abs(std::cos(theta1 + theta2) - 1.0) < kGaplessTolerance,
              "gapless regime needs cos(theta1 + theta2) = 1");
      cfg.velocity_matrix = PdeModel::two_period(theta1, theta2).velocity();
      break;
    }
    case DiracConfig::Regime::gapless_diagonal: {
      require(std::abs(theta1) <= kSmallAngleLimit, "diagonal gapless regime needs a small theta1");
      require(std::abs(theta1 + theta2) <= kRegimeAngleTolerance,
              "diagonal gapless regime needs theta2 = -theta1");
      require(std::abs(std::cos(theta1 + theta2) - 1.0) < kGaplessTolerance,
              "gapless regime needs cos(theta1 + theta2) = 1");
      const double c2 = std::cos(theta2);
      cfg.velocity_matrix = Mat2::diag(c2, -c2);
      break;
    }
  }
  return cfg;
}

double dirac_spread_check(const DiracConfig& config, double t) {
  if (config.regime == DiracConfig::Regime::gapped) return t * std::abs(std::cos(config.theta2));
  return t * std::abs(std::cos(config.theta1) * std::cos(config.theta2));
}

std::string regime_name(DiracConfig::Regime regime) {
  switch (regime) {
    case DiracConfig::Regime::gapped:
      return "gapped";
    case DiracConfig::Regime::gapless_general:
      return "gapless_general";
    case DiracConfig::Regime::gapless_diagonal:
      return "gapless_diagonal";
  }
  return "unknown";
}

}  // namespace qwalk
