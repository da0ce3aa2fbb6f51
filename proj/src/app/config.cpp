#include "qwalk/app/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qwalk/linalg.hpp"

namespace qwalk::app {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("invalid " + what + ": '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

double angle_or(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return parse_angle(obj.at(key));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

json angle_json(double a) { return a; }

}  // namespace

double parse_angle(const std::string& text) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    std::string factor = t.substr(0, t.size() - 2);
    factor = trim(factor);
    if (!factor.empty() && factor.back() == '*') factor.pop_back();
    double f = 1.0;
    if (factor.empty() || factor == "+") {
      f = 1.0;
    } else if (factor == "-") {
      f = -1.0;
    } else if (const auto slash = factor.find('/'); slash != std::string::npos) {
      f = parse_number(factor.substr(0, slash), "angle") /
          parse_number(factor.substr(slash + 1), "angle");
    } else {
      f = parse_number(factor, "angle");
    }
    return f * kPi;
  }
  return parse_number(t, "angle");
}

double parse_angle(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_angle(value.get<std::string>());
  throw ConfigError("angle must be a number or a string like \"0.25pi\"");
}

PositionProfile parse_profile(const std::string& text) {
  const std::string t = trim(text);
  if (t == "point") return PositionProfile::point();
  if (t.rfind("gaussian:", 0) == 0) {
    std::string rest = t.substr(9);
    Site center = 0;
    if (const auto at = rest.find('@'); at != std::string::npos) {
      center = static_cast<Site>(parse_number(rest.substr(at + 1), "profile center"));
      rest = rest.substr(0, at);
    }
    const double w = parse_number(rest, "gaussian width");
    if (!(w > 0.0)) throw ConfigError("gaussian width must be positive");
    return PositionProfile::gaussian(w, center);
  }
  throw ConfigError("profile must be 'point' or 'gaussian:W', got '" + text + "'");
}

std::vector<Site> parse_step_list(const std::string& text) {
  std::vector<Site> steps;
  for (const std::string& part : split(text, ',')) {
    if (part.empty()) continue;
    const double v = parse_number(part, "record step");
    if (v < 0 || v != std::floor(v)) throw ConfigError("record steps must be non-negative integers");
    steps.push_back(static_cast<Site>(v));
  }
  return steps;
}

CoinSchedule ScheduleSpec::build() const {
  if (kind == "homogeneous") return CoinSchedule::homogeneous(theta1);
  if (kind == "n_period") {
    if (n < 2) throw ConfigError("schedule.n must be >= 2 for n_period");
    return CoinSchedule::n_period(n, theta1, theta2);
  }
  if (kind == "explicit") {
    if (thetas.empty()) throw ConfigError("schedule.thetas must be non-empty for explicit");
    return CoinSchedule::explicit_list(thetas);
  }
  if (kind == "split_step") return CoinSchedule::split_step(theta1, theta2);
  throw ConfigError("schedule.kind must be one of homogeneous, n_period, explicit, split_step");
}

ScheduleSpec ScheduleSpec::with_angles(double t1, double t2) const {
  ScheduleSpec out = *this;
  out.theta1 = t1;
  out.theta2 = t2;
  return out;
}

void RunConfig::validate() const {
  if (steps < 0) throw ConfigError("steps must be >= 0");
  const CoinSchedule s = schedule.build();
  if (s.kind() == CoinSchedule::Kind::explicit_list &&
      static_cast<Site>(schedule.thetas.size()) < steps) {
    throw ConfigError("schedule.thetas has " + std::to_string(schedule.thetas.size()) +
                      " angles but steps = " + std::to_string(steps));
  }
  for (Site r : record_at) {
    if (r < 0 || r > steps) throw ConfigError("record_at entries must lie in [0, steps]");
  }
  if (!(analysis.mass > 0.0 && analysis.mass <= 1.0)) {
    throw ConfigError("analysis.mass must be in (0, 1]");
  }
  if (!(analysis.eps > 0.0)) throw ConfigError("analysis.eps must be positive");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
}

std::vector<double> GridAxis::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] =
        count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
  if (count > 1) v.back() = stop;
  return v;
}

GridAxis parse_grid(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw ConfigError("grid must be 'start,stop,count', got '" + text + "'");
  const double count = parse_number(parts[2], "grid count");
  if (count != std::floor(count)) throw ConfigError("grid count must be an integer");
  return {parse_angle(parts[0]), parse_angle(parts[1]), static_cast<int>(count)};
}

void SweepConfig::validate() const {
  base.validate();
  const auto check = [](const GridAxis& g, const char* name) {
    if (g.count < 1) throw ConfigError(std::string(name) + " grid count must be >= 1");
    for (double v : {g.start, g.stop}) {
      if (v < -1e-12 || v > kPi + 1e-12) {
        throw ConfigError(std::string(name) + " grid bounds must lie in [0, pi]");
      }
    }
  };
  check(theta1, "theta1");
  if (theta2) check(*theta2, "theta2");
  if (base.schedule.kind == "explicit") throw ConfigError("sweeps need a periodic schedule");
  if (k_points < 3) throw ConfigError("k_points must be >= 3");
}

RunConfig run_config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig cfg;
  if (doc.contains("schedule")) {
    const json& s = doc.at("schedule");
    cfg.schedule.kind = get_or<std::string>(s, "kind", cfg.schedule.kind);
    cfg.schedule.n = get_or<int>(s, "n", cfg.schedule.n);
    cfg.schedule.theta1 = angle_or(s, "theta", cfg.schedule.theta1);
    cfg.schedule.theta1 = angle_or(s, "theta1", cfg.schedule.theta1);
    cfg.schedule.theta2 = angle_or(s, "theta2", cfg.schedule.theta2);
    if (s.contains("thetas")) {
      cfg.schedule.thetas.clear();
      for (const json& a : s.at("thetas")) cfg.schedule.thetas.push_back(parse_angle(a));
    }
  }
  if (doc.contains("initial")) {
    const json& i = doc.at("initial");
    cfg.initial.delta = angle_or(i, "delta", cfg.initial.delta);
    cfg.initial.eta = angle_or(i, "eta", cfg.initial.eta);
    if (i.contains("profile")) {
      const json& p = i.at("profile");
      if (p.is_string()) {
        cfg.profile = parse_profile(p.get<std::string>());
      } else if (p.is_object()) {
        const std::string kind = get_or<std::string>(p, "kind", "point");
        const Site center = get_or<Site>(p, "center", 0);
        if (kind == "point") {
          cfg.profile = PositionProfile::point(center);
        } else if (kind == "gaussian") {
          const double w = get_or<double>(p, "width", 0.0);
          if (!(w > 0.0)) throw ConfigError("initial.profile.width must be positive");
          cfg.profile = PositionProfile::gaussian(w, center);
        } else {
          throw ConfigError("initial.profile.kind must be point or gaussian");
        }
      } else {
        throw ConfigError("initial.profile must be a string or an object");
      }
    }
  }
  cfg.steps = get_or<Site>(doc, "steps", cfg.steps);
  cfg.record_at = get_or<std::vector<Site>>(doc, "record_at", cfg.record_at);
  if (doc.contains("analysis")) {
    const json& a = doc.at("analysis");
    cfg.analysis.sigma = get_or<bool>(a, "sigma", cfg.analysis.sigma);
    cfg.analysis.quantiles = get_or<bool>(a, "quantiles", cfg.analysis.quantiles);
    cfg.analysis.entropy = get_or<bool>(a, "entropy", cfg.analysis.entropy);
    cfg.analysis.residuals = get_or<bool>(a, "residuals", cfg.analysis.residuals);
    cfg.analysis.amplitudes = get_or<bool>(a, "amplitudes", cfg.analysis.amplitudes);
    cfg.analysis.mass = get_or<double>(a, "mass", cfg.analysis.mass);
    cfg.analysis.eps = get_or<double>(a, "eps", cfg.analysis.eps);
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    cfg.out_dir = get_or<std::string>(o, "dir", cfg.out_dir);
    cfg.format = get_or<std::string>(o, "format", cfg.format);
  }
  return cfg;
}

SweepConfig sweep_config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("sweep config must be a JSON object");
  SweepConfig cfg;
  cfg.base = run_config_from_json(doc.contains("base") ? doc.at("base") : doc);
  const auto axis = [](const json& g) {
    GridAxis a;
    a.start = angle_or(g, "start", 0.0);
    a.stop = angle_or(g, "stop", a.start);
    a.count = get_or<int>(g, "count", 1);
    return a;
  };
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    if (g.contains("theta1")) cfg.theta1 = axis(g.at("theta1"));
    if (g.contains("theta2")) cfg.theta2 = axis(g.at("theta2"));
  }
  if (!doc.contains("grid") || !doc.at("grid").contains("theta1")) {
    cfg.theta1 = {cfg.base.schedule.theta1, cfg.base.schedule.theta1, 1};
  }
  cfg.k_points = get_or<int>(doc, "k_points", cfg.k_points);
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json schedule = {{"kind", cfg.schedule.kind},
                   {"theta1", angle_json(cfg.schedule.theta1)},
                   {"theta2", angle_json(cfg.schedule.theta2)}};
  if (cfg.schedule.kind == "n_period") schedule["n"] = cfg.schedule.n;
  if (cfg.schedule.kind == "explicit") schedule["thetas"] = cfg.schedule.thetas;
  json profile = {{"kind", cfg.profile.kind == PositionProfile::Kind::point ? "point" : "gaussian"},
                  {"center", cfg.profile.center}};
  if (cfg.profile.kind == PositionProfile::Kind::gaussian) profile["width"] = cfg.profile.width;
  return {
      {"schedule", schedule},
      {"initial", {{"delta", cfg.initial.delta}, {"eta", cfg.initial.eta}, {"profile", profile}}},
      {"steps", cfg.steps},
      {"record_at", cfg.record_at},
      {"analysis",
       {{"sigma", cfg.analysis.sigma},
        {"quantiles", cfg.analysis.quantiles},
        {"entropy", cfg.analysis.entropy},
        {"residuals", cfg.analysis.residuals},
        {"amplitudes", cfg.analysis.amplitudes},
        {"mass", cfg.analysis.mass},
        {"eps", cfg.analysis.eps}}},
      {"output", {{"dir", cfg.out_dir}, {"format", cfg.format}}},
  };
}

json to_json(const SweepConfig& cfg) {
  const auto axis = [](const GridAxis& a) {
    return json{{"start", a.start}, {"stop", a.stop}, {"count", a.count}};
  };
  json grid = {{"theta1", axis(cfg.theta1)}};
  if (cfg.theta2) grid["theta2"] = axis(*cfg.theta2);
  return {{"base", to_json(cfg.base)}, {"grid", grid}, {"k_points", cfg.k_points}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // e.what() carries "at line L, column C"
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

}  // namespace qwalk::app
