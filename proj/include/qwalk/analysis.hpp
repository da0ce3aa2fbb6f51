#pragma once

// Observables of a walker state: position distribution and its spread,
// and coin-position entanglement of the pure state.

#include <array>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/schedule.hpp"

namespace qwalk {

/// P(x, t) over the walker window. Parity zeros are kept.
struct Distribution {
  Site x_min = 0;
  Site step = 0;
  std::vector<double> p;

  Site x_max() const { return x_min + static_cast<Site>(p.size()) - 1; }
  double at(Site x) const;
  double total() const;
};

Distribution probability_distribution(const WalkerState& state);

double mean_position(const Distribution& dist);

/// Standard deviation about the distribution mean.
double standard_deviation(const Distribution& dist);

/// sqrt(sum p(x) (x - origin)^2), the spread about the starting site.
double origin_rms(const Distribution& dist, Site origin = 0);

/// Smallest r with sum_{|x-origin| <= r} p(x) >= mass.
Site quantile_radius(const Distribution& dist, double mass, Site origin = 0);

/// Largest |x - origin| with p(x) > eps, or 0.
Site support_radius(const Distribution& dist, double eps, Site origin = 0);

inline constexpr double kDefaultQuantileMass = 0.99;
inline constexpr double kDefaultSupportEps = 1e-10;

struct WalkSummary {
  double mean = 0.0;
  double sigma = 0.0;
  Site quantile_radius = 0;
  Site support_radius = 0;
};

WalkSummary summarize(const Distribution& dist, double mass = kDefaultQuantileMass,
                      double eps = kDefaultSupportEps, Site origin = 0);

/// rho_c = Tr_position |psi><psi|, basis (down, up).
struct CoinDensityMatrix {
  Mat2 rho;

  /// Ascending, clipped to [0, 1].
  std::array<double, 2> eigenvalues() const;
};

CoinDensityMatrix reduced_coin_density(const WalkerState& state);

/// -Tr rho log2 rho in bits, with 0 log 0 = 0.
double entanglement_entropy(const CoinDensityMatrix& rho);

/// Entropy after every step 0..t.
struct EntropyTrace {
  std::vector<double> entropy;

  /// Mean over steps [first, last], inclusive.
  double mean(Site first, Site last) const;
};

EntropyTrace entropy_trace(const InitialCoinState& coin, const PositionProfile& profile,
                           const CoinSchedule& schedule, Site t);

}  // namespace qwalk
