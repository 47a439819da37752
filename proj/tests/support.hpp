#pragma once

// Test-only generators and oracles. Nothing here calls into the code paths it
// is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "arcmap/geometry/point.hpp"

namespace arcmap::testing {

using geometry::Point2;

/// Star-shaped polygon about the origin: sorted random angles, radii in
/// [r_min, 1]. Simple by construction.
inline std::vector<Point2> random_star_polygon(std::mt19937_64& rng, int vertices, double r_min = 0.45) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> angles(vertices);
  // Jittered stratification keeps consecutive angles apart.
  for (int k = 0; k < vertices; ++k)
    angles[k] = 2.0 * std::numbers::pi * (k + 0.15 + 0.7 * unit(rng)) / vertices;
  std::vector<Point2> pts;
  for (double a : angles) {
    const double r = r_min + (1.0 - r_min) * unit(rng);
    pts.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  pts.push_back(pts.front());
  return pts;
}

/// Outer convex-hull layer of a random point cloud (counter-clockwise, closed).
inline std::vector<Point2> random_hull_polygon(std::mt19937_64& rng, int points) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<Point2> cloud(points);
  for (auto& p : cloud) p = {coord(rng), coord(rng)};
  std::sort(cloud.begin(), cloud.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  auto turn = [](Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
  std::vector<Point2> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (const Point2& p : cloud) {
      while (hull.size() >= base + 2 && turn(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(cloud.begin(), cloud.end());
  }
  hull.push_back(hull.front());
  return hull;
}

/// Winding number by summing signed turning angles (independent of any
/// crossing-parity code).
inline int winding_number(const std::vector<Point2>& closed, Point2 p) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < closed.size(); ++i) {
    const std::complex<double> a(closed[i].x - p.x, closed[i].y - p.y);
    const std::complex<double> b(closed[i + 1].x - p.x, closed[i + 1].y - p.y);
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// Composite trapezoid rule with n panels; spectrally accurate for smooth
/// periodic integrands.
template <class F>
double trapezoid_periodic(F&& f, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  double sum = 0.0;
  for (long k = 0; k < n; ++k) sum += f(a + h * static_cast<double>(k));
  return sum * h;
}

/// Arithmetic-geometric mean.
inline double agm(double a, double b) {
  for (int i = 0; i < 60 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return 0.5 * (a + b);
}

/// Complete elliptic integral of the first kind K(k) by the AGM.
inline double elliptic_k(double k) { return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(1.0 - k * k))); }

}  // namespace arcmap::testing
