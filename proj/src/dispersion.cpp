#include "qwalk/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

enum class Shift { full, minus, plus };

struct Stage {
  Shift shift;
  double theta;
};

// One effective step as an ordered list of (coin, then shift) stages.
std::vector<Stage> stages_of(const CoinSchedule& schedule) {
  switch (schedule.kind()) {
    case CoinSchedule::Kind::homogeneous:
      return {{Shift::full, schedule.angles().first}};
    case CoinSchedule::Kind::n_period: {
      std::vector<Stage> out;
      for (int s = 1; s <= schedule.period_steps(); ++s) {
        out.push_back({Shift::full, schedule.coin_for_step(s).theta});
      }
      return out;
    }
    case CoinSchedule::Kind::split_step: {
      const auto [a, b] = schedule.angles();
      return {{Shift::minus, a}, {Shift::plus, b}};
    }
    case CoinSchedule::Kind::explicit_list:
      break;
  }
  throw std::invalid_argument("Bloch matrices need a periodic schedule, got " +
                              schedule.describe());
}

Mat2 shift_matrix(Shift s, double k) {
  switch (s) {
    case Shift::full:
      return Mat2::diag(std::polar(1.0, k), std::polar(1.0, -k));
    case Shift::minus:
      return Mat2::diag(std::polar(1.0, k), 1.0);
    case Shift::plus:
      return Mat2::diag(1.0, std::polar(1.0, -k));
  }
  return Mat2::identity();
}

Mat2 shift_derivative(Shift s, double k) {
  switch (s) {
    case Shift::full:
      return Mat2::diag(kI * std::polar(1.0, k), -kI * std::polar(1.0, -k));
    case Shift::minus:
      return Mat2::diag(kI * std::polar(1.0, k), 0.0);
    case Shift::plus:
      return Mat2::diag(0.0, -kI * std::polar(1.0, -k));
  }
  return Mat2{};
}

struct MatrixAndSlope {
  Mat2 m;
  Mat2 dm;
};

MatrixAndSlope accumulate(const CoinSchedule& schedule, double k) {
  MatrixAndSlope acc{Mat2::identity(), Mat2{}};
  for (const Stage& st : stages_of(schedule)) {
    const Mat2 coin = make_coin(CoinAngle{st.theta});
    const Mat2 f = shift_matrix(st.shift, k);
    const Mat2 df = shift_derivative(st.shift, k);
    acc.dm = df * coin * acc.m + f * coin * acc.dm;
    acc.m = f * coin * acc.m;
  }
  return acc;
}

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * kPi);
  if (phi <= -kPi) phi += 2.0 * kPi;
  return phi;
}

double phase_distance(double a, double b) { return std::abs(wrap_phase(a - b)); }

LocalSpectrum spectrum_of(const Mat2& m, const Mat2& dm) {
  LocalSpectrum out;
  // i M' M^H is Hermitian for unitary M(k); its expectation in an
  // eigenvector is d omega / dk.
  const Mat2 h = kI * (dm * m.adjoint());

  const Complex half_trace = 0.5 * m.trace();
  const Complex root = std::sqrt(half_trace * half_trace - m.det());
  const std::array<Complex, 2> lambda{half_trace + root, half_trace - root};
  out.degenerate = std::abs(lambda[0] - lambda[1]) < kBandGapTolerance;

  if (out.degenerate) {
    const double phase = -std::arg(half_trace);
    out.omega = {phase, phase};
    out.velocity = hermitian_eigenvalues(h);
    return out;
  }
  for (int j = 0; j < 2; ++j) {
    Spinor v1{m.b, lambda[j] - m.a};
    Spinor v2{lambda[j] - m.d, m.c};
    const double n1 = std::norm(v1.down) + std::norm(v1.up);
    const double n2 = std::norm(v2.down) + std::norm(v2.up);
    Spinor v = n1 >= n2 ? v1 : v2;
    const double nrm = std::sqrt(std::max(n1, n2));
    v.down /= nrm;
    v.up /= nrm;
    const Spinor hv = h.apply(v);
    out.omega[j] = wrap_phase(-std::arg(lambda[j]));
    out.velocity[j] = (std::conj(v.down) * hv.down + std::conj(v.up) * hv.up).real();
  }
  return out;
}

double local_max_speed(const CoinSchedule& schedule, double k) {
  const LocalSpectrum ls = local_spectrum(schedule, k);
  return std::max(std::abs(ls.velocity[0]), std::abs(ls.velocity[1]));
}

}  // namespace

BlochMatrix bloch_matrix(const CoinSchedule& schedule, double k) {
  return {k, accumulate(schedule, k).m};
}

Mat2 bloch_derivative(const CoinSchedule& schedule, double k) {
  return accumulate(schedule, k).dm;
}

LocalSpectrum local_spectrum(const CoinSchedule& schedule, double k) {
  const MatrixAndSlope acc = accumulate(schedule, k);
  return spectrum_of(acc.m, acc.dm);
}

bool SpectralCurve::has_crossing() const {
  return std::any_of(samples.begin(), samples.end(),
                     [](const SpectralSample& s) { return s.crossing; });
}

std::vector<double> uniform_k_grid(std::size_t count) {
  if (count < 2) throw std::invalid_argument("k grid needs at least two points");
  std::vector<double> grid(count);
  const double step = 2.0 * kPi / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = -kPi + step * static_cast<double>(i);
  grid.back() = kPi;
  return grid;
}

SpectralCurve exact_dispersion(const CoinSchedule& schedule, std::span<const double> k_grid) {
  if (k_grid.empty()) throw std::invalid_argument("empty k grid");
  if (!std::is_sorted(k_grid.begin(), k_grid.end())) {
    throw std::invalid_argument("k grid must be sorted");
  }
  SpectralCurve curve;
  curve.period_steps = schedule.period_steps();
  curve.samples.reserve(k_grid.size());

  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    const double k = k_grid[i];
    const LocalSpectrum ls = local_spectrum(schedule, k);
    int plus = 0;

    if (i == 0) {
      // label the band heading into the upper half plane as "plus"
      constexpr double h = 1e-6;
      const double a = wrap_phase(ls.omega[0] + ls.velocity[0] * h);
      const double b = wrap_phase(ls.omega[1] + ls.velocity[1] * h);
      plus = a >= b ? 0 : 1;
    } else {
      const SpectralSample& prev = curve.samples.back();
      const double dk = k - prev.k;
      const double pred_plus = prev.omega_plus + prev.v_plus * dk;
      const double pred_minus = prev.omega_minus + prev.v_minus * dk;
      const double keep = phase_distance(ls.omega[0], pred_plus) +
                          phase_distance(ls.omega[1], pred_minus);
      const double swap = phase_distance(ls.omega[1], pred_plus) +
                          phase_distance(ls.omega[0], pred_minus);
      if (ls.degenerate || prev.crossing || std::abs(keep - swap) < 1e-12) {
        const double vkeep =
            std::abs(ls.velocity[0] - prev.v_plus) + std::abs(ls.velocity[1] - prev.v_minus);
        const double vswap =
            std::abs(ls.velocity[1] - prev.v_plus) + std::abs(ls.velocity[0] - prev.v_minus);
        plus = vkeep <= vswap ? 0 : 1;
      } else {
        plus = keep <= swap ? 0 : 1;
      }
    }
    const int minus = 1 - plus;

    SpectralSample s;
    s.k = k;
    s.v_plus = ls.velocity[plus];
    s.v_minus = ls.velocity[minus];
    s.crossing = ls.degenerate;
    if (i == 0) {
      s.omega_plus = ls.omega[plus];
      s.omega_minus = ls.omega[minus];
    } else {
      const SpectralSample& prev = curve.samples.back();
      s.omega_plus = prev.omega_plus + wrap_phase(ls.omega[plus] - prev.omega_plus);
      s.omega_minus = prev.omega_minus + wrap_phase(ls.omega[minus] - prev.omega_minus);
    }
    curve.samples.push_back(s);
  }

  // Shift each unwrapped band by a multiple of 2 pi so it sits in (-pi, pi]
  // at the middle of the grid.
  const SpectralSample& mid = curve.samples[curve.samples.size() / 2];
  const double shift_plus = wrap_phase(mid.omega_plus) - mid.omega_plus;
  const double shift_minus = wrap_phase(mid.omega_minus) - mid.omega_minus;
  for (SpectralSample& s : curve.samples) {
    s.omega_plus += shift_plus;
    s.omega_minus += shift_minus;
  }
  return curve;
}

GroupSpeed max_group_speed(const CoinSchedule& schedule, std::size_t grid_points) {
  const std::vector<double> grid = uniform_k_grid(grid_points);
  GroupSpeed best;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const LocalSpectrum ls = local_spectrum(schedule, grid[i]);
    best.crossing = best.crossing || ls.degenerate;
    const double v = std::max(std::abs(ls.velocity[0]), std::abs(ls.velocity[1]));
    if (v > best.per_effective_step) {
      best.per_effective_step = v;
      best_i = i;
    }
  }
  best.k = grid[best_i];

  // golden-section on the bracketing cells; |v| is periodic in k
  const double step = grid[1] - grid[0];
  double lo = best.k - step;
  double hi = best.k + step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = local_max_speed(schedule, c);
  double fd = local_max_speed(schedule, d);
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = local_max_speed(schedule, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = local_max_speed(schedule, d);
    }
  }
  const double k_ref = 0.5 * (lo + hi);
  const double v_ref = local_max_speed(schedule, k_ref);
  if (v_ref > best.per_effective_step) {
    best.per_effective_step = v_ref;
    best.k = wrap_phase(k_ref);
  }
  best.per_step = best.per_effective_step / schedule.period_steps();
  return best;
}

ContinuumModel continuum_model(const CoinSchedule& schedule) {
  const auto [a, b] = schedule.angles();
  switch (schedule.kind()) {
    case CoinSchedule::Kind::homogeneous:
      return {ContinuumFamily::one, a, a, 1};
    case CoinSchedule::Kind::split_step:
      return {ContinuumFamily::two, a, b, 2};
    case CoinSchedule::Kind::n_period: {
      const int n = schedule.period_steps();
      if (n == 2) return {ContinuumFamily::two, a, b, 2};
      if (n == 3) return {ContinuumFamily::three, a, b, 3};
      return {ContinuumFamily::n, a, b, n};
    }
    case CoinSchedule::Kind::explicit_list:
      break;
  }
  throw std::invalid_argument("no continuum model for " + schedule.describe());
}

std::vector<double> continuum_group_velocities(const ContinuumModel& model) {
  const double c1 = std::cos(model.theta1);
  const double c12 = c1 * std::cos(model.theta2);
  std::vector<double> v;
  switch (model.family) {
    case ContinuumFamily::one:
      v = {-c1, c1};
      break;
    case ContinuumFamily::two:
      v = {-c12, c12};
      break;
    case ContinuumFamily::three:
      v = {0.5 * (c1 + c12), -0.5 * (c1 + c12), 0.5 * (c1 - c12), -0.5 * (c1 - c12)};
      break;
    case ContinuumFamily::n: {
      if (model.n < 2) throw std::invalid_argument("n-period model needs n >= 2");
      const double w = 1.0 / (model.n - 1);
      const double base = (model.n - 2) * c1;
      v = {w * (base + c12), -w * (base + c12), w * (base - c12), -w * (base - c12)};
      break;
    }
  }
  std::sort(v.begin(), v.end());
  return v;
}

double continuum_max_group_speed(const ContinuumModel& model) {
  const double c1 = std::abs(std::cos(model.theta1));
  const double c12 = c1 * std::abs(std::cos(model.theta2));
  switch (model.family) {
    case ContinuumFamily::one:
      return c1;
    case ContinuumFamily::two:
      return c12;
    case ContinuumFamily::three:
      return 0.5 * (c1 + c12);
    case ContinuumFamily::n:
      if (model.n < 2) throw std::invalid_argument("n-period model needs n >= 2");
      return ((model.n - 2) * c1 + c12) / (model.n - 1);
  }
  return 0.0;
}

double continuum_omega(const ContinuumModel& model, double k, int branch_sign) {
  double v = continuum_max_group_speed(model);
  if (model.family == ContinuumFamily::one) v = std::cos(model.theta1);
  if (model.family == ContinuumFamily::two) v = std::cos(model.theta1) * std::cos(model.theta2);
  return branch_sign >= 0 ? -k * v : k * v;
}

double continuum_damping(const ContinuumModel& model) {
  switch (model.family) {
    case ContinuumFamily::one:
      return std::cos(model.theta1) - 1.0;
    case ContinuumFamily::two:
      return std::cos(model.theta1 + model.theta2) - 1.0;
    default:
      return 0.0;
  }
}

double spread_bound(const ContinuumModel& model, double t) {
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  const double c1 = std::abs(std::cos(model.theta1));
  const double c12 = c1 * std::abs(std::cos(model.theta2));
  switch (model.family) {
    case ContinuumFamily::one:
      return t * c1;
    case ContinuumFamily::two:
      return t * c12;
    case ContinuumFamily::three:
      return (t / 2.0) * (c1 + c12);
    case ContinuumFamily::n:
      if (model.n < 2) throw std::invalid_argument("n-period model needs n >= 2");
      return (t / (model.n - 1)) * ((model.n - 2) * c1 + c12);
  }
  return 0.0;
}

}  // namespace qwalk
