// qwalk: periodic and split-step discrete-time quantum walks on a line.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qwalk/app/commands.hpp"

using namespace qwalk;
using namespace qwalk::app;

namespace {

enum Exit { kOk = 0, kConfig = 2, kInvariant = 3, kIo = 4 };

struct RunFlags {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<Site> steps;
  std::optional<std::string> theta1, theta2, delta, eta, profile, record, thetas;
  std::optional<int> period;
  bool split_step = false;
  std::optional<double> mass, eps;
  bool residuals = false;
  bool amplitudes = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--steps", f.steps, "number of walk steps");
  cmd->add_option("--theta1", f.theta1, "coin angle, e.g. 0.25pi");
  cmd->add_option("--theta2", f.theta2, "second coin angle");
  cmd->add_option("--period", f.period, "n for an n-period schedule (1 = homogeneous)");
  cmd->add_flag("--split-step", f.split_step, "split-step schedule");
  cmd->add_option("--thetas", f.thetas, "explicit per-step angles, comma separated");
  cmd->add_option("--delta", f.delta, "initial coin state angle");
  cmd->add_option("--eta", f.eta, "initial coin state phase");
  cmd->add_option("--profile", f.profile, "point or gaussian:W");
  cmd->add_option("--record", f.record, "steps to record, e.g. 10,50,100");
  cmd->add_option("--mass", f.mass, "quantile mass");
  cmd->add_option("--eps", f.eps, "support threshold");
  cmd->add_flag("--residuals", f.residuals, "emit recurrence/continuum residuals");
  cmd->add_flag("--amplitudes", f.amplitudes, "emit spinor amplitudes");
}

void apply_schedule_flags(const RunFlags& f, ScheduleSpec& s) {
  if (f.theta1) s.theta1 = parse_angle(*f.theta1);
  if (f.theta2) s.theta2 = parse_angle(*f.theta2);
  if (f.split_step + f.period.has_value() + f.thetas.has_value() > 1) {
    throw ConfigError("--period, --split-step and --thetas are mutually exclusive");
  }
  if (f.split_step) s.kind = "split_step";
  if (f.period) {
    if (*f.period < 1) throw ConfigError("--period must be >= 1");
    s.kind = *f.period == 1 ? "homogeneous" : "n_period";
    s.n = *f.period;
  }
  if (f.thetas) {
    s.kind = "explicit";
    s.thetas.clear();
    std::string rest = *f.thetas;
    for (std::size_t pos; !rest.empty();) {
      pos = rest.find(',');
      s.thetas.push_back(parse_angle(rest.substr(0, pos)));
      rest = pos == std::string::npos ? "" : rest.substr(pos + 1);
    }
  }
}

RunConfig build_run(const RunFlags& f, const nlohmann::json& doc) {
  RunConfig cfg = doc.is_null() ? RunConfig{} : run_config_from_json(doc);
  apply_schedule_flags(f, cfg.schedule);
  if (f.out) cfg.out_dir = *f.out;
  if (f.format) cfg.format = *f.format;
  if (f.steps) cfg.steps = *f.steps;
  if (f.delta) cfg.initial.delta = parse_angle(*f.delta);
  if (f.eta) cfg.initial.eta = parse_angle(*f.eta);
  if (f.profile) cfg.profile = parse_profile(*f.profile);
  if (f.record) cfg.record_at = parse_step_list(*f.record);
  if (f.mass) cfg.analysis.mass = *f.mass;
  if (f.eps) cfg.analysis.eps = *f.eps;
  if (f.residuals) cfg.analysis.residuals = true;
  if (f.amplitudes) cfg.analysis.amplitudes = true;
  return cfg;
}

nlohmann::json load(const RunFlags& f) {
  return f.config ? load_json_file(*f.config) : nlohmann::json();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::vector<std::string>& paths) {
  for (const auto& p : paths) std::cout << p << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time quantum walks with periodic and split-step coin schedules"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  int threads = 0;
  std::optional<std::uint64_t> seed;  // reserved: the dynamics is deterministic
  app.add_option("--threads", threads, "worker threads for sweeps (0 = all cores)");
  app.add_option("--seed", seed, "reserved, unused");

  RunFlags walk_flags;
  auto* walk = app.add_subcommand("walk", "evolve one configuration");
  add_run_flags(walk, walk_flags);

  RunFlags sweep_flags;
  std::optional<std::string> grid1, grid2;
  std::optional<int> sweep_k;
  auto* sweep = app.add_subcommand("sweep", "grid over (theta1, theta2)");
  add_run_flags(sweep, sweep_flags);
  sweep->add_option("--grid1", grid1, "theta1 grid start,stop,count");
  sweep->add_option("--grid2", grid2, "theta2 grid start,stop,count");
  sweep->add_option("--k-count", sweep_k, "momentum samples for the group speed");
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");

  int figure_id = 0;
  std::optional<Site> figure_steps;
  std::string figure_out = ".";
  std::string figure_format = "csv";
  auto* figure = app.add_subcommand("figure", "reproduce a preset figure dataset");
  figure->add_option("id", figure_id, "figure number 1..9")->required();
  figure->add_option("--steps", figure_steps, "override the preset step count");
  figure->add_option("--out", figure_out, "output directory");
  figure->add_option("--format", figure_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  figure->add_option("--threads", threads, "worker threads (0 = all cores)");

  RunFlags disp_flags;
  int k_count = 4097;
  auto* disp = app.add_subcommand("dispersion", "exact and continuum dispersion relations");
  add_run_flags(disp, disp_flags);
  disp->add_option("--k-count", k_count, "momentum samples over [-pi, pi]");

  std::string coarse, fine, compare_out;
  int scale = 2;
  double tol = 1e-12;
  auto* compare = app.add_subcommand("compare", "check fine(scale x, scale t) == coarse(x, t)");
  compare->add_option("coarse", coarse, "distribution CSV, e.g. a split-step run")->required();
  compare->add_option("fine", fine, "distribution CSV, e.g. the two-period run")->required();
  compare->add_option("--scale", scale, "lattice scale factor");
  compare->add_option("--tol", tol, "largest accepted probability difference");

  auto* selfcheck = app.add_subcommand("selfcheck", "run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*walk) {
      const RunConfig cfg = build_run(walk_flags, load(walk_flags));
      const auto tables = compute_walk(cfg);
      report(write_named(cfg.out_dir, "walk", "walk", tables, cfg.format, to_json(cfg), seconds_since(t0)));
    } else if (*sweep) {
      const nlohmann::json doc = load(sweep_flags);
      SweepConfig cfg = doc.is_null() ? SweepConfig{} : sweep_config_from_json(doc);
      cfg.base = build_run(sweep_flags, doc.is_null() ? doc : (doc.contains("base") ? doc.at("base") : doc));
      if (grid1) cfg.theta1 = parse_grid(*grid1);
      else if (doc.is_null() || !doc.contains("grid") || !doc.at("grid").contains("theta1")) cfg.theta1 = {cfg.base.schedule.theta1, cfg.base.schedule.theta1, 1};
      if (grid2) cfg.theta2 = parse_grid(*grid2);
      if (sweep_k) cfg.k_points = *sweep_k;
      Table t = compute_sweep(cfg, threads);
      report(write_named(cfg.base.out_dir, "sweep", "sweep", {{"sweep", std::move(t)}}, cfg.base.format,
                         to_json(cfg), seconds_since(t0)));
    } else if (*figure) {
      const auto tables = compute_figure(figure_id, figure_steps, threads);
      nlohmann::json echo = {{"figure", figure_id}};
      if (figure_steps) echo["steps"] = *figure_steps;
      report(write_named(figure_out, "figure", "figure" + std::to_string(figure_id), tables, figure_format,
                         echo, seconds_since(t0)));
    } else if (*disp) {
      const RunConfig cfg = build_run(disp_flags, load(disp_flags));
      const auto tables = compute_dispersion(cfg.schedule, k_count);
      nlohmann::json echo = to_json(cfg)["schedule"];
      echo["k_count"] = k_count;
      report(write_named(cfg.out_dir, "dispersion", "dispersion", tables, cfg.format, echo, seconds_since(t0)));
    } else if (*compare) {
      const CompareResult r = compare_distributions(read_csv(coarse), read_csv(fine), scale);
      std::printf("matched %zu rows, max |dp| = %.3e\n", r.matched, r.max_diff);
      if (r.max_diff > tol) {
        std::fprintf(stderr, "compare: difference %.3e exceeds tolerance %.3e\n", r.max_diff, tol);
        return kInvariant;
      }
    } else if (*selfcheck) {
      bool ok = true;
      for (const CheckResult& c : run_selfcheck()) {
        std::printf("%s  %s (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        ok = ok && c.pass;
      }
      return ok ? kOk : kInvariant;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const InvariantViolation& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return kInvariant;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  }
  return kOk;
}
