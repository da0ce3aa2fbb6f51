#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qwalk/analysis.hpp"
#include "qwalk/app/commands.hpp"
#include "qwalk/dispersion.hpp"

namespace qwalk::app {

namespace {

struct Preset {
  double theta1;
  double theta2;
};

// Default (theta1, theta2) pairs shared by the figure presets.
constexpr Preset kPresets[] = {{kPi / 4, kPi / 3}, {kPi / 3, kPi / 12}};

InitialCoinState figure_coin() { return {kPi / 4, 0.0}; }

struct Series {
  Distribution final_dist;
  std::vector<double> sigma;
  std::vector<double> entropy;
};

Series run_series(const CoinSchedule& schedule, Site t) {
  Series out;
  evolve_observed(figure_coin(), PositionProfile::point(), schedule, t,
                  [&](const WalkerState& s) {
                    const Distribution d = probability_distribution(s);
                    out.sigma.push_back(standard_deviation(d));
                    out.entropy.push_back(entanglement_entropy(reduced_coin_density(s)));
                    if (s.step_count() == t) out.final_dist = d;
                  });
  return out;
}

// p over [-t, t] with missing sites as zeros.
double p_at(const Distribution& d, Site x) {
  return x < d.x_min || x > d.x_max() ? 0.0 : d.at(x);
}

// Homogeneous theta1, homogeneous theta2 and one periodic schedule, per preset.
std::vector<NamedTable> compare_with_homogeneous(const std::string& prefix, int n, Site t) {
  Table dist{{"preset", "x", "p_theta1", "p_theta2", "p_periodic"}, {}};
  Table sigma{{"preset", "step", "sigma_theta1", "sigma_theta2", "sigma_periodic"}, {}};
  std::int64_t id = 0;
  for (const Preset& p : kPresets) {
    ++id;
    const Series a = run_series(CoinSchedule::homogeneous(p.theta1), t);
    const Series b = run_series(CoinSchedule::homogeneous(p.theta2), t);
    const Series c = run_series(CoinSchedule::n_period(n, p.theta1, p.theta2), t);
    for (Site x = -t; x <= t; ++x) {
      dist.add_row({id, x, p_at(a.final_dist, x), p_at(b.final_dist, x), p_at(c.final_dist, x)});
    }
    for (Site s = 0; s <= t; ++s) {
      const auto i = static_cast<std::size_t>(s);
      sigma.add_row({id, s, a.sigma[i], b.sigma[i], c.sigma[i]});
    }
  }
  return {{prefix + "_distribution", std::move(dist)}, {prefix + "_sigma", std::move(sigma)}};
}

SweepConfig surface(int n, Site t, int count) {
  SweepConfig cfg;
  cfg.base.schedule.kind = "n_period";
  cfg.base.schedule.n = n;
  cfg.base.initial = figure_coin();
  cfg.base.steps = t;
  cfg.theta1 = {0.0, kPi / 2, count};
  cfg.theta2 = GridAxis{0.0, kPi / 2, count};
  return cfg;
}

Table with_min_law(const Table& sweep, Site t) {
  Table out{{"theta1", "theta2", "sigma", "min_law"}, {}};
  const double td = static_cast<double>(t);
  for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
    const double a = sweep.number(r, "theta1");
    const double b = sweep.number(r, "theta2");
    out.add_row({a, b, sweep.number(r, "sigma"),
                 std::min(td * std::abs(std::cos(a)), td * std::abs(std::cos(b)))});
  }
  return out;
}

std::vector<NamedTable> figure2(Site t, int threads) {
  Table out{{"theta1", "theta2", "sigma", "min_law"}, {}};
  for (double theta2 : {0.0, kPi / 6, kPi / 4, kPi / 3}) {
    SweepConfig cfg = surface(2, t, 51);
    cfg.theta2 = GridAxis{theta2, theta2, 1};
    const Table s = with_min_law(compute_sweep(cfg, threads), t);
    for (const auto& row : s.rows) out.add_row(row);
  }
  return {{"fig2_sigma_vs_theta1", std::move(out)}};
}

std::vector<NamedTable> figure4() {
  Table out{{"theta1", "theta2", "v_continuum", "v_exact_per_step"}, {}};
  const GridAxis axis{0.0, kPi / 2, 51};
  for (double a : axis.values()) {
    for (double b : axis.values()) {
      const CoinSchedule s = CoinSchedule::n_period(2, a, b);
      out.add_row({a, b, continuum_max_group_speed(continuum_model(s)),
                   max_group_speed(s).per_step});
    }
  }
  return {{"fig4_group_velocity", std::move(out)}};
}

std::vector<NamedTable> figure7(Site t, int threads) {
  const Table s = compute_sweep(surface(3, t, 51), threads);
  Table out{{"theta1", "theta2", "support_radius", "quantile_radius", "spread_bound"}, {}};
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    out.add_row({s.number(r, "theta1"), s.number(r, "theta2"),
                 static_cast<std::int64_t>(s.number(r, "support_radius")),
                 static_cast<std::int64_t>(s.number(r, "quantile_radius")),
                 s.number(r, "spread_bound")});
  }
  return {{"fig7_spread", std::move(out)}};
}

std::vector<NamedTable> figure8(Site t) {
  const Preset p = kPresets[0];
  Table dist{{"n", "x", "p"}, {}};
  Table sigma{{"n", "step", "sigma"}, {}};
  Table bound{{"n", "support_radius", "quantile_radius", "spread_bound", "max_group_speed"}, {}};
  for (int n : {3, 4, 50}) {
    const CoinSchedule sched = CoinSchedule::n_period(n, p.theta1, p.theta2);
    const Series s = run_series(sched, t);
    for (Site x = -t; x <= t; ++x) dist.add_row({std::int64_t{n}, x, p_at(s.final_dist, x)});
    for (Site k = 0; k <= t; ++k) {
      sigma.add_row({std::int64_t{n}, k, s.sigma[static_cast<std::size_t>(k)]});
    }
    bound.add_row({std::int64_t{n}, support_radius(s.final_dist, kDefaultSupportEps),
                   quantile_radius(s.final_dist, kDefaultQuantileMass),
                   spread_bound(continuum_model(sched), static_cast<double>(t)),
                   max_group_speed(sched).per_step});
  }
  auto inset = compare_with_homogeneous("fig8_inset", 2, t);
  std::vector<NamedTable> out{{"fig8_distribution", std::move(dist)},
                              {"fig8_sigma", std::move(sigma)},
                              {"fig8_bounds", std::move(bound)}};
  out.push_back(std::move(inset[0]));
  return out;
}

std::vector<NamedTable> figure9(Site t) {
  Table out{{"preset", "step", "entropy_theta1", "entropy_theta2", "entropy_two_period",
             "entropy_three_period", "entropy_fifty_period"},
            {}};
  std::int64_t id = 0;
  for (const Preset& p : kPresets) {
    ++id;
    const std::vector<CoinSchedule> schedules{
        CoinSchedule::homogeneous(p.theta1), CoinSchedule::homogeneous(p.theta2),
        CoinSchedule::n_period(2, p.theta1, p.theta2), CoinSchedule::n_period(3, p.theta1, p.theta2),
        CoinSchedule::n_period(50, p.theta1, p.theta2)};
    std::vector<EntropyTrace> traces;
    for (const auto& s : schedules) traces.push_back(entropy_trace(figure_coin(), PositionProfile::point(), s, t));
    for (Site k = 0; k <= t; ++k) {
      std::vector<Cell> row{id, k};
      for (const auto& tr : traces) row.emplace_back(tr.entropy[static_cast<std::size_t>(k)]);
      out.add_row(std::move(row));
    }
  }
  return {{"fig9_entropy", std::move(out)}};
}

}  // namespace

std::vector<NamedTable> compute_figure(int id, std::optional<Site> steps_override, int threads) {
  const auto steps = [&](Site dflt) {
    const Site t = steps_override.value_or(dflt);
    if (t < 0) throw ConfigError("steps must be >= 0");
    return t;
  };
  switch (id) {
    case 1:
      return compare_with_homogeneous("fig1", 2, steps(200));
    case 2:
      return figure2(steps(100), threads);
    case 3: {
      const Site t = steps(25);
      return {{"fig3_sigma_surface", with_min_law(compute_sweep(surface(2, t, 51), threads), t)}};
    }
    case 4:
      return figure4();
    case 5:
      return compare_with_homogeneous("fig5", 3, steps(200));
    case 6: {
      const Site t = steps(45);
      return {{"fig6_sigma_surface", with_min_law(compute_sweep(surface(3, t, 51), threads), t)}};
    }
    case 7:
      return figure7(steps(100), threads);
    case 8:
      return figure8(steps(200));
    case 9:
      return figure9(steps(200));
    default:
      throw ConfigError("figure id must be 1..9, got " + std::to_string(id));
  }
}

}  // namespace qwalk::app
