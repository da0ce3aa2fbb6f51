#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "qwalk/analysis.hpp"
#include "qwalk/app/commands.hpp"
#include "qwalk/dirac.hpp"
#include "qwalk/dispersion.hpp"

namespace qwalk::app {

namespace {

void check_norm(const WalkerState& s) {
  const double drift = std::abs(s.norm_squared() - 1.0);
  if (drift > kNormGuard) {
    throw InvariantViolation("norm drifted by " + format_double(drift) + " at step " +
                             std::to_string(s.step_count()));
  }
}

Table residual_table(const RunConfig& cfg, const CoinSchedule& schedule) {
  Table t{{"check", "max_abs", "l2", "x", "t"}, {}};
  const Trajectory traj = evolve_all(cfg.initial, cfg.profile, schedule, cfg.steps);
  const auto add = [&t](const std::string& name, const ResidualReport& r) {
    t.add_row({name, r.max_abs, r.l2, r.x, r.t});
  };
  const auto [a, b] = schedule.angles();
  switch (schedule.kind()) {
    case CoinSchedule::Kind::homogeneous:
      if (cfg.steps >= 1) add("recurrence_one_period", recurrence_residual(traj, RecurrenceFamily::one_period(a)));
      if (cfg.profile.kind == PositionProfile::Kind::gaussian && cfg.steps >= 1) {
        add("pde_one_period", differential_residual(traj, PdeModel::one_period(a)));
      }
      break;
    case CoinSchedule::Kind::n_period:
      if (schedule.period_steps() == 2 && cfg.steps >= 2) {
        add("recurrence_two_period_pairstep",
            recurrence_residual(traj, RecurrenceFamily::two_period_pairstep(a, b)));
        const Trajectory eff = decimate_pair_steps(traj);
        if (eff.snapshots.size() >= 2) {
          add("recurrence_combined_step", recurrence_residual(eff, RecurrenceFamily::combined_step(a, b)));
          if (cfg.profile.kind == PositionProfile::Kind::gaussian) {
            add("pde_two_period", differential_residual(eff, PdeModel::two_period(a, b)));
          }
        }
      }
      break;
    case CoinSchedule::Kind::split_step:
      if (cfg.steps >= 1) {
        add("recurrence_split_step", recurrence_residual(traj, RecurrenceFamily::split_step(a, b)));
        if (cfg.profile.kind == PositionProfile::Kind::gaussian) {
          add("pde_two_period", differential_residual(traj, PdeModel::two_period(a, b)));
        }
      }
      break;
    case CoinSchedule::Kind::explicit_list:
      break;
  }
  return t;
}

struct PointResult {
  double sigma = 0.0;
  double mean = 0.0;
  Site quantile = 0;
  Site support = 0;
  double entropy_mean = 0.0;
};

PointResult run_point(const RunConfig& base, const CoinSchedule& schedule) {
  const Site t = base.steps;
  const Site first = t - t / 4;  // last quarter of the run
  double entropy_sum = 0.0;
  Distribution final_dist;
  evolve_observed(base.initial, base.profile, schedule, t, [&](const WalkerState& s) {
    if (base.analysis.entropy && s.step_count() >= first) {
      entropy_sum += entanglement_entropy(reduced_coin_density(s));
    }
    if (s.step_count() == t) {
      check_norm(s);
      final_dist = probability_distribution(s);
    }
  });
  const WalkSummary sum =
      summarize(final_dist, base.analysis.mass, base.analysis.eps, base.profile.center);
  return {sum.sigma, sum.mean, sum.quantile_radius, sum.support_radius,
          base.analysis.entropy ? entropy_sum / static_cast<double>(t - first + 1) : 0.0};
}

}  // namespace

std::vector<NamedTable> compute_walk(const RunConfig& cfg) {
  cfg.validate();
  const CoinSchedule schedule = cfg.schedule.build();
  const Trajectory traj = evolve(cfg.initial, cfg.profile, schedule, cfg.steps, cfg.record_at);

  Table dist{{"step", "x", "p"}, {}};
  if (cfg.analysis.amplitudes) {
    for (const char* c : {"down_re", "down_im", "up_re", "up_im"}) dist.columns.emplace_back(c);
  }
  Table summary{{"step", "mean", "norm_error"}, {}};
  if (cfg.analysis.sigma) {
    summary.columns.emplace_back("sigma");
    summary.columns.emplace_back("origin_rms");
  }
  if (cfg.analysis.quantiles) {
    summary.columns.emplace_back("quantile_radius");
    summary.columns.emplace_back("support_radius");
  }
  if (cfg.analysis.entropy) summary.columns.emplace_back("entropy");

  for (const WalkerState& s : traj.snapshots) {
    check_norm(s);
    const Distribution d = probability_distribution(s);
    for (Site x = s.x_min(); x <= s.x_max(); ++x) {
      std::vector<Cell> row{s.step_count(), x, d.at(x)};
      if (cfg.analysis.amplitudes) {
        const Spinor a = s.at(x);
        row.insert(row.end(), {a.down.real(), a.down.imag(), a.up.real(), a.up.imag()});
      }
      dist.add_row(std::move(row));
    }
    const Site origin = cfg.profile.center;
    std::vector<Cell> row{s.step_count(), mean_position(d), s.norm_squared() - 1.0};
    if (cfg.analysis.sigma) {
      row.emplace_back(standard_deviation(d));
      row.emplace_back(origin_rms(d, origin));
    }
    if (cfg.analysis.quantiles) {
      row.emplace_back(quantile_radius(d, cfg.analysis.mass, origin));
      row.emplace_back(support_radius(d, cfg.analysis.eps, origin));
    }
    if (cfg.analysis.entropy) row.emplace_back(entanglement_entropy(reduced_coin_density(s)));
    summary.add_row(std::move(row));
  }

  std::vector<NamedTable> out{{"walk_distribution", std::move(dist)},
                              {"walk_summary", std::move(summary)}};
  if (cfg.analysis.residuals) out.push_back({"walk_residuals", residual_table(cfg, schedule)});
  return out;
}

Table compute_sweep(const SweepConfig& cfg, int threads) {
  cfg.validate();
  const std::vector<double> g1 = cfg.theta1.values();
  const std::vector<double> g2 =
      cfg.theta2 ? cfg.theta2->values() : std::vector<double>{cfg.base.schedule.theta2};

  struct Point {
    double t1, t2;
  };
  std::vector<Point> points;
  for (double a : g1) {
    for (double b : g2) points.push_back({a, b});
  }
  std::vector<std::vector<Cell>> rows(points.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const CoinSchedule s = cfg.base.schedule.with_angles(points[i].t1, points[i].t2).build();
      const PointResult r = run_point(cfg.base, s);
      const ContinuumModel model = continuum_model(s);
      const GroupSpeed speed = max_group_speed(s, static_cast<std::size_t>(cfg.k_points));
      rows[i] = {points[i].t1,
                 points[i].t2,
                 r.sigma,
                 r.mean,
                 r.quantile,
                 r.support,
                 r.entropy_mean,
                 spread_bound(model, static_cast<double>(cfg.base.steps)),
                 continuum_max_group_speed(model),
                 speed.per_step};
    }
  };

  const int n_threads =
      threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
  }

  Table t{{"theta1", "theta2", "sigma", "mean", "quantile_radius", "support_radius",
           "entropy_mean", "spread_bound", "continuum_speed", "max_group_speed"},
          {}};
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

std::vector<NamedTable> compute_dispersion(const ScheduleSpec& spec, int k_count) {
  if (k_count < 3) throw ConfigError("k count must be >= 3");
  const CoinSchedule schedule = spec.build();
  if (schedule.kind() == CoinSchedule::Kind::explicit_list) {
    throw ConfigError("dispersion needs a periodic schedule");
  }
  const auto grid = uniform_k_grid(static_cast<std::size_t>(k_count));
  const SpectralCurve curve = exact_dispersion(schedule, grid);
  const ContinuumModel model = continuum_model(schedule);
  const double v_cont = continuum_max_group_speed(model);

  Table rows{{"k", "omega_plus", "omega_minus", "v_plus", "v_minus", "omega_continuum_plus",
              "omega_continuum_minus", "v_continuum", "crossing"},
             {}};
  for (const SpectralSample& s : curve.samples) {
    rows.add_row({s.k, s.omega_plus, s.omega_minus, s.v_plus, s.v_minus,
                  continuum_omega(model, s.k, +1), continuum_omega(model, s.k, -1), v_cont,
                  static_cast<std::int64_t>(s.crossing)});
  }

  const GroupSpeed speed = max_group_speed(schedule, static_cast<std::size_t>(k_count));
  const double cont = continuum_max_group_speed(model);
  Table summary{{"period_steps", "max_speed_effective", "max_speed_per_step", "k_at_max",
                 "continuum_max_speed", "discrepancy", "crossing"},
                {}};
  summary.add_row({static_cast<std::int64_t>(curve.period_steps), speed.per_effective_step,
                   speed.per_step, speed.k, cont, speed.per_step - cont,
                   static_cast<std::int64_t>(speed.crossing || curve.has_crossing())});
  return {{"dispersion", std::move(rows)}, {"dispersion_summary", std::move(summary)}};
}

CompareResult compare_distributions(const Table& coarse, const Table& fine, int scale) {
  if (scale < 1) throw ConfigError("compare scale must be >= 1");
  std::map<std::pair<Site, Site>, double> fine_p;
  for (std::size_t r = 0; r < fine.rows.size(); ++r) {
    fine_p[{static_cast<Site>(fine.number(r, "step")), static_cast<Site>(fine.number(r, "x"))}] =
        fine.number(r, "p");
  }
  CompareResult res;
  std::map<Site, bool> fine_steps;
  for (std::size_t r = 0; r < coarse.rows.size(); ++r) {
    const Site step = static_cast<Site>(coarse.number(r, "step"));
    const Site x = static_cast<Site>(coarse.number(r, "x"));
    const auto it = fine_p.find({scale * step, scale * x});
    const double pf = it == fine_p.end() ? 0.0 : it->second;
    res.max_diff = std::max(res.max_diff, std::abs(pf - coarse.number(r, "p")));
    ++res.matched;
    fine_steps[scale * step] = true;
  }
  for (const auto& [key, p] : fine_p) {
    if (fine_steps.count(key.first) && key.second % scale != 0) {
      res.max_diff = std::max(res.max_diff, std::abs(p));
    }
  }
  return res;
}

std::vector<std::string> write_named(const std::string& dir, const std::string& command,
                                     const std::string& meta_stem,
                                     const std::vector<NamedTable>& tables,
                                     const std::string& format, const nlohmann::json& config,
                                     double wall_seconds) {
  std::vector<std::string> paths;
  for (const NamedTable& t : tables) paths.push_back(write_table(dir, t.stem, t.table, format).string());
  paths.push_back(write_metadata(dir, meta_stem, command, config, wall_seconds).string());
  return paths;
}

}  // namespace qwalk::app
