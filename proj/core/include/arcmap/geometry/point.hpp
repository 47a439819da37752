#pragma once

#include <cmath>
#include <complex>

namespace arcmap::geometry {

/// A point of the plane, read as the complex number x + iy.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2() = default;
  constexpr Point2(double px, double py) : x(px), y(py) {}
  explicit Point2(std::complex<double> z) : x(z.real()), y(z.imag()) {}

  std::complex<double> as_complex() const { return {x, y}; }
  bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

}  // namespace arcmap::geometry
