#include "qwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qwalk {

double Distribution::at(Site x) const {
  if (x < x_min || x > x_max()) return 0.0;
  return p[static_cast<std::size_t>(x - x_min)];
}

double Distribution::total() const { return std::accumulate(p.begin(), p.end(), 0.0); }

Distribution probability_distribution(const WalkerState& state) {
  Distribution dist{state.x_min(), state.step_count(), std::vector<double>(state.size())};
  const auto down = state.down();
  const auto up = state.up();
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    dist.p[i] = std::norm(down[i]) + std::norm(up[i]);
  }
  return dist;
}

double mean_position(const Distribution& dist) {
  double m = 0.0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    m += dist.p[i] * static_cast<double>(dist.x_min + static_cast<Site>(i));
  }
  return m;
}

double standard_deviation(const Distribution& dist) {
  // two-pass about the mean; the one-pass formula loses digits for drifting walks
  const double m = mean_position(dist);
  double var = 0.0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    const double dx = static_cast<double>(dist.x_min + static_cast<Site>(i)) - m;
    var += dist.p[i] * dx * dx;
  }
  return std::sqrt(std::max(var, 0.0));
}

double origin_rms(const Distribution& dist, Site origin) {
  double s = 0.0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    const double dx = static_cast<double>(dist.x_min + static_cast<Site>(i) - origin);
    s += dist.p[i] * dx * dx;
  }
  return std::sqrt(s);
}

Site quantile_radius(const Distribution& dist, double mass, Site origin) {
  if (!(mass > 0.0 && mass <= 1.0)) throw std::invalid_argument("quantile mass must be in (0, 1]");
  const Site reach = std::max(origin - dist.x_min, dist.x_max() - origin);
  double cumulative = dist.at(origin);
  if (cumulative >= mass) return 0;
  Site last_occupied = 0;
  for (Site r = 1; r <= reach; ++r) {
    const double shell = dist.at(origin - r) + dist.at(origin + r);
    if (shell > 0.0) last_occupied = r;
    cumulative += shell;
    if (cumulative >= mass) return r;
  }
  // round-off kept the sum below mass; the whole occupied region is needed
  return last_occupied;
}

Site support_radius(const Distribution& dist, double eps, Site origin) {
  if (!(eps > 0.0)) throw std::invalid_argument("support threshold must be positive");
  Site r = 0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    if (dist.p[i] > eps) {
      const Site x = dist.x_min + static_cast<Site>(i);
      r = std::max(r, x > origin ? x - origin : origin - x);
    }
  }
  return r;
}

WalkSummary summarize(const Distribution& dist, double mass, double eps, Site origin) {
  return {mean_position(dist), standard_deviation(dist), quantile_radius(dist, mass, origin),
          support_radius(dist, eps, origin)};
}

std::array<double, 2> CoinDensityMatrix::eigenvalues() const {
  auto ev = hermitian_eigenvalues(rho);
  for (double& v : ev) v = std::clamp(v, 0.0, 1.0);
  return ev;
}

CoinDensityMatrix reduced_coin_density(const WalkerState& state) {
  Complex dd{}, du{}, uu{};
  const auto down = state.down();
  const auto up = state.up();
  for (std::size_t i = 0; i < down.size(); ++i) {
    dd += std::norm(down[i]);
    du += down[i] * std::conj(up[i]);
    uu += std::norm(up[i]);
  }
  return {Mat2{dd, du, std::conj(du), uu}};
}

double entanglement_entropy(const CoinDensityMatrix& rho) {
  double e = 0.0;
  for (double lambda : rho.eigenvalues()) {
    if (lambda > 0.0) e -= lambda * std::log2(lambda);
  }
  return e;
}

double EntropyTrace::mean(Site first, Site last) const {
  if (first < 0 || last < first || static_cast<std::size_t>(last) >= entropy.size()) {
    throw std::out_of_range("entropy window outside trace");
  }
  double sum = 0.0;
  for (Site s = first; s <= last; ++s) sum += entropy[static_cast<std::size_t>(s)];
  return sum / static_cast<double>(last - first + 1);
}

EntropyTrace entropy_trace(const InitialCoinState& coin, const PositionProfile& profile,
                           const CoinSchedule& schedule, Site t) {
  EntropyTrace trace;
  trace.entropy.reserve(static_cast<std::size_t>(t + 1));
  evolve_observed(coin, profile, schedule, t, [&](const WalkerState& state) {
    trace.entropy.push_back(entanglement_entropy(reduced_coin_density(state)));
  });
  return trace;
}

}  // namespace qwalk
