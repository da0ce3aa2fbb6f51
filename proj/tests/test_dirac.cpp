#include "doctest.h"
#include "qwalk/analysis.hpp"
#include "qwalk/dirac.hpp"

using namespace qwalk;

namespace {

using Regime = DiracConfig::Regime;

Trajectory all_steps(const CoinSchedule& s, Site t, PositionProfile p = PositionProfile::point()) {
  return evolve_all({0.6, 0.9}, p, s, t);
}

double pde_l2(const CoinSchedule& s, PdeModel m, double w, Site t) {
  return differential_residual(all_steps(s, t, PositionProfile::gaussian(w)), m).l2;
}

}  // namespace

TEST_CASE("each walk family satisfies its own recurrence") {
  const double a = kPi / 4, b = kPi / 3;
  CHECK(recurrence_residual(all_steps(CoinSchedule::homogeneous(a), 100), RecurrenceFamily::one_period(a)).max_abs <= 1e-13);

  const Trajectory two = all_steps(CoinSchedule::n_period(2, a, b), 100);
  CHECK(recurrence_residual(two, RecurrenceFamily::two_period_pairstep(a, b)).max_abs <= 1e-13);
  CHECK(recurrence_residual(decimate_pair_steps(two), RecurrenceFamily::combined_step(a, b)).max_abs <= 1e-13);

  const Trajectory ss = all_steps(CoinSchedule::split_step(a, b), 100);
  CHECK(recurrence_residual(ss, RecurrenceFamily::split_step(a, b)).max_abs <= 1e-13);
  CHECK(recurrence_residual(ss, RecurrenceFamily::combined_step(a, b)).max_abs <= 1e-13);
}

TEST_CASE("recurrences detect the wrong angle") {
  const double a = kPi / 4, b = kPi / 3;
  CHECK(recurrence_residual(all_steps(CoinSchedule::homogeneous(a), 100), RecurrenceFamily::one_period(b)).max_abs > 0.05);
  CHECK(recurrence_residual(all_steps(CoinSchedule::n_period(2, a, b), 100),
                            RecurrenceFamily::two_period_pairstep(b, a)).max_abs > 0.05);
  CHECK(recurrence_residual(all_steps(CoinSchedule::split_step(a, b), 100), RecurrenceFamily::split_step(a, a)).max_abs > 0.05);
}

TEST_CASE("residual report is self-consistent") {
  const ResidualReport r = recurrence_residual(all_steps(CoinSchedule::homogeneous(0.3), 30), RecurrenceFamily::one_period(0.9));
  CHECK(r.max_abs >= 0.0);
  CHECK(r.l2 >= 0.0);
  CHECK(r.samples > 0);
  CHECK(r.max_abs <= r.l2 * std::sqrt(static_cast<double>(r.samples)) + 1e-15);
  CHECK(r.t >= 0);
  CHECK(r.t < 30);
  CHECK(std::abs(r.x) <= 30);
}

TEST_CASE("recurrence needs matching snapshot spacing") {
  const std::vector<Site> sparse{0, 5};
  const Trajectory t = evolve({}, PositionProfile::point(), CoinSchedule::homogeneous(0.4), 10, sparse);
  CHECK_THROWS_AS(recurrence_residual(t, RecurrenceFamily::one_period(0.4)), SnapshotSpacingError);
  const std::vector<Site> odd{1};
  const Trajectory u = evolve({}, PositionProfile::point(), CoinSchedule::n_period(2, 0.4, 0.5), 3, odd);
  CHECK_THROWS_AS(recurrence_residual(u, RecurrenceFamily::two_period_pairstep(0.4, 0.5)), SnapshotSpacingError);
}

TEST_CASE("pair-step decimation relabels sites and steps") {
  const Trajectory two = all_steps(CoinSchedule::n_period(2, 0.3, 0.8), 10);
  const Trajectory eff = decimate_pair_steps(two);
  REQUIRE(eff.snapshots.size() == 6);
  CHECK(eff.snapshots[3].step_count() == 3);
  for (Site x = -3; x <= 3; ++x) {
    CHECK(eff.snapshots[3].at(x).down == two.at_step(6).at(2 * x).down);
    CHECK(eff.snapshots[3].at(x).up == two.at_step(6).at(2 * x).up);
  }
  CHECK(probability_distribution(eff.snapshots[5]).total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("differential residual of free transport shrinks like 1/w^2") {
  // forward differences in t against central differences in x leave half a
  // second difference behind, so theta = 0 is not residual-free on the lattice
  const double r10 = pde_l2(CoinSchedule::homogeneous(0.0), PdeModel::one_period(0.0), 10, 30);
  const double r20 = pde_l2(CoinSchedule::homogeneous(0.0), PdeModel::one_period(0.0), 20, 30);
  const double r40 = pde_l2(CoinSchedule::homogeneous(0.0), PdeModel::one_period(0.0), 40, 30);
  CHECK(r10 / r20 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(r20 / r40 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(r40 < 1e-3);
}

TEST_CASE("two-period continuum residual shrinks with smoother packets") {
  const auto s = CoinSchedule::n_period(2, 0.05, 0.05);
  const auto model = PdeModel::two_period(0.05, 0.05);
  double prev = 1e300;
  for (double w : {5.0, 10.0, 20.0, 40.0}) {
    const Trajectory eff = decimate_pair_steps(all_steps(s, 100, PositionProfile::gaussian(w)));
    const double r = differential_residual(eff, model).l2;
    CHECK(r <= prev * 1.1);
    prev = r;
  }
  const double w5 = differential_residual(decimate_pair_steps(all_steps(s, 100, PositionProfile::gaussian(5))), model).l2;
  const double w20 = differential_residual(decimate_pair_steps(all_steps(s, 100, PositionProfile::gaussian(20))), model).l2;
  CHECK(w20 < w5);
}

TEST_CASE("continuum residual discriminates the model") {
  const Trajectory eff = decimate_pair_steps(all_steps(CoinSchedule::n_period(2, 0.3, 0.5), 100, PositionProfile::gaussian(20)));
  const double matched = differential_residual(eff, PdeModel::two_period(0.3, 0.5)).l2;
  const double wrong = differential_residual(eff, PdeModel::one_period(0.3)).l2;
  CHECK(wrong >= 5 * matched);
}

TEST_CASE("differential residual preconditions") {
  CHECK_THROWS_AS(differential_residual(all_steps(CoinSchedule::homogeneous(0.1), 5), PdeModel::one_period(0.1)),
                  std::invalid_argument);
  const std::vector<Site> sparse{0};
  const Trajectory t = evolve({}, PositionProfile::gaussian(2.0), CoinSchedule::homogeneous(0.1), 4, sparse);
  CHECK_THROWS_AS(differential_residual(t, PdeModel::one_period(0.1)), SnapshotSpacingError);
}

TEST_CASE("PDE coefficient matrices") {
  const PdeModel m = PdeModel::two_period(0.4, 0.7);
  CHECK(max_abs(m.velocity() - m.velocity().adjoint()) <= 1e-15);
  CHECK(m.drift().a == Complex(std::cos(1.1) - 1.0));
  CHECK(max_abs(PdeModel::one_period(0.0).drift()) == 0.0);
}

TEST_CASE("dirac_config regimes") {
  const DiracConfig free = dirac_config(Regime::gapped, 0.0, 0.0);
  CHECK(free.mass_coefficient == 0.0);
  CHECK(max_abs(free.velocity_matrix - Mat2::diag(1.0, -1.0)) == 0.0);

  const DiracConfig gapped = dirac_config(Regime::gapped, 0.0, 0.1);
  CHECK(gapped.mass_coefficient == 0.1);
  CHECK(gapped.velocity_matrix.a.real() == doctest::Approx(0.995));
  CHECK(gapped.velocity_matrix.d.real() == doctest::Approx(-0.995));

  const DiracConfig general = dirac_config(Regime::gapless_general, kPi / 3, -kPi / 3);
  CHECK(general.mass_coefficient == 0.0);
  CHECK(max_abs(general.velocity_matrix - general.velocity_matrix.adjoint()) <= 1e-14);
  const auto ev = hermitian_eigenvalues(general.velocity_matrix);
  CHECK(ev[0] == doctest::Approx(-0.5));
  CHECK(ev[1] == doctest::Approx(0.5));

  const DiracConfig diag = dirac_config(Regime::gapless_diagonal, 0.05, -0.05);
  CHECK(diag.mass_coefficient == 0.0);
  CHECK(diag.velocity_matrix.a.real() == doctest::Approx(std::cos(0.05)));
  CHECK(regime_name(Regime::gapless_diagonal) == "gapless_diagonal");
}

TEST_CASE("dirac_config rejects configurations outside the regimes") {
  CHECK_THROWS_AS(dirac_config(Regime::gapped, 0.1, 0.05), DiracRegimeError);
  CHECK_THROWS_AS(dirac_config(Regime::gapped, 0.0, 1.0), DiracRegimeError);
  CHECK_THROWS_AS(dirac_config(Regime::gapless_general, 0.3, 0.3), DiracRegimeError);
  CHECK_THROWS_AS(dirac_config(Regime::gapless_general, kPi / 4, -kPi / 4 + 1e-5), DiracRegimeError);
  CHECK_THROWS_AS(dirac_config(Regime::gapless_diagonal, 0.05, 0.05), DiracRegimeError);
  CHECK_THROWS_AS(dirac_config(Regime::gapless_diagonal, 1.0, -1.0), DiracRegimeError);
  CHECK_NOTHROW(dirac_config(Regime::gapless_general, 1.0, 2 * kPi - 1.0));
}

TEST_CASE("mass vanishes exactly on the gapless condition") {
  for (double t2 : {0.0, 1e-7, 1e-6, 0.01, 0.05, 0.1}) {
    const DiracConfig c = dirac_config(Regime::gapped, 0.0, t2);
    const bool gapless = std::abs(std::cos(t2) - 1.0) < kGaplessTolerance;
    CHECK((c.mass_coefficient == 0.0) == gapless);
  }
}

TEST_CASE("predicted cone radii") {
  CHECK(dirac_spread_check(dirac_config(Regime::gapless_general, kPi / 4, -kPi / 4), 200) == doctest::Approx(100.0));
  CHECK(dirac_spread_check(dirac_config(Regime::gapped, 0.0, 0.05), 200) == doctest::Approx(199.75).epsilon(1e-4));
  CHECK(dirac_spread_check(dirac_config(Regime::gapless_diagonal, 1e-8, -1e-8), 200) == doctest::Approx(200.0));
}
