#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace qwalk {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Two-component spinor ordered (down, up), i.e. (|0>, |1>).
struct Spinor {
  Complex down;
  Complex up;
};

/// Dense 2x2 complex matrix, row-major: [[a, b], [c, d]].
struct Mat2 {
  Complex a{}, b{}, c{}, d{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(Complex x, Complex y) { return {x, 0.0, 0.0, y}; }

  Complex trace() const { return a + d; }
  Complex det() const { return a * d - b * c; }
  Mat2 adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }
  Spinor apply(const Spinor& s) const {
    return {a * s.down + b * s.up, c * s.down + d * s.up};
  }
};

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
inline Mat2 operator+(const Mat2& x, const Mat2& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}
inline Mat2 operator-(const Mat2& x, const Mat2& y) {
  return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}
inline Mat2 operator*(Complex s, const Mat2& x) {
  return {s * x.a, s * x.b, s * x.c, s * x.d};
}

/// Largest entry modulus.
inline double max_abs(const Mat2& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

/// Eigenvalues of a Hermitian 2x2 matrix, ascending.
inline std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
  const double p = 0.5 * (m.a.real() + m.d.real());
  const double q = 0.5 * (m.a.real() - m.d.real());
  const double r = std::sqrt(q * q + std::norm(m.b));
  return {p - r, p + r};
}

}  // namespace qwalk
