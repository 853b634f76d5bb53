#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace shrinkers {

/// A point or vector of R^4 = C^2, stored as (x1, y1, x2, y2) with
/// z1 = x1 + i y1 and z2 = x2 + i y2.
struct Vec4 {
  std::array<double, 4> c{};

  constexpr Vec4() = default;
  constexpr Vec4(double x1, double y1, double x2, double y2) : c{x1, y1, x2, y2} {}

  static Vec4 from_complex(std::complex<double> z1, std::complex<double> z2) {
    return {z1.real(), z1.imag(), z2.real(), z2.imag()};
  }

  std::complex<double> z1() const { return {c[0], c[1]}; }
  std::complex<double> z2() const { return {c[2], c[3]}; }

  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  constexpr Vec4& operator+=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec4& operator-=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec4& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }
};

constexpr Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
constexpr Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
constexpr Vec4 operator-(Vec4 a) { return a *= -1.0; }
constexpr Vec4 operator*(double s, Vec4 a) { return a *= s; }
constexpr Vec4 operator*(Vec4 a, double s) { return a *= s; }
constexpr Vec4 operator/(Vec4 a, double s) { return a *= (1.0 / s); }

constexpr double dot(const Vec4& a, const Vec4& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }
constexpr double norm2(const Vec4& a) { return dot(a, a); }

/// Complex structure: multiplication by i in each complex coordinate.
constexpr Vec4 complex_structure(const Vec4& v) { return {-v.c[1], v.c[0], -v.c[3], v.c[2]}; }

/// Kaehler form omega(v, w) = <Jv, w>.
constexpr double kaehler_form(const Vec4& v, const Vec4& w) { return dot(complex_structure(v), w); }

}  // namespace shrinkers
