#pragma once

// Second-order forward-mode jet in two variables: a value together with its
// gradient and Hessian, propagated exactly through arithmetic and the
// elementary functions used by test functions and conformal weights.

#include <cmath>

namespace hcr {

struct Jet2 {
  double v = 0.0;
  double d1 = 0.0, d2 = 0.0;               // first partials
  double d11 = 0.0, d12 = 0.0, d22 = 0.0;  // second partials

  constexpr Jet2() = default;
  constexpr Jet2(double value) : v(value) {}  // NOLINT: constants promote implicitly
  constexpr Jet2(double value, double g1, double g2, double h11, double h12, double h22)
      : v(value), d1(g1), d2(g2), d11(h11), d12(h12), d22(h22) {}

  static constexpr Jet2 variable1(double x) { return {x, 1.0, 0.0, 0.0, 0.0, 0.0}; }
  static constexpr Jet2 variable2(double x) { return {x, 0.0, 1.0, 0.0, 0.0, 0.0}; }

  Jet2& operator+=(const Jet2& o) { return *this = *this + o; }
  Jet2& operator-=(const Jet2& o) { return *this = *this - o; }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }
  Jet2& operator/=(const Jet2& o) { return *this = *this / o; }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d11 + b.d11, a.d12 + b.d12, a.d22 + b.d22};
  }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d11 - b.d11, a.d12 - b.d12, a.d22 - b.d22};
  }
  friend Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2, -a.d11, -a.d12, -a.d22}; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + a.v * b.d2,
            a.d11 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d11,
            a.d12 * b.v + a.d1 * b.d2 + a.d2 * b.d1 + a.v * b.d12,
            a.d22 * b.v + 2.0 * a.d2 * b.d2 + a.v * b.d22};
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

  // g(a) given g, g', g'' evaluated at a.v
  static Jet2 compose(const Jet2& a, double g0, double g1, double g2) {
    return {g0,
            g1 * a.d1,
            g1 * a.d2,
            g2 * a.d1 * a.d1 + g1 * a.d11,
            g2 * a.d1 * a.d2 + g1 * a.d12,
            g2 * a.d2 * a.d2 + g1 * a.d22};
  }

  friend Jet2 reciprocal(const Jet2& a) {
    const double inv = 1.0 / a.v;
    return compose(a, inv, -inv * inv, 2.0 * inv * inv * inv);
  }
};

inline Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return Jet2::compose(a, s, c, -s);
}
inline Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return Jet2::compose(a, c, -s, -c);
}
inline Jet2 tan(const Jet2& a) {
  const double t = std::tan(a.v);
  const double sec2 = 1.0 + t * t;
  return Jet2::compose(a, t, sec2, 2.0 * t * sec2);
}
inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return Jet2::compose(a, e, e, e);
}
inline Jet2 log(const Jet2& a) { return Jet2::compose(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.v);
  return Jet2::compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet2 pow(const Jet2& a, double p) {
  const double x = a.v;
  return Jet2::compose(a, std::pow(x, p), p * std::pow(x, p - 1.0), p * (p - 1.0) * std::pow(x, p - 2.0));
}

}  // namespace hcr
