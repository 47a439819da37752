#include "arcmap/geometry/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "arcmap/error.hpp"

namespace arcmap::geometry {
namespace {

struct TwoTerm {
  double hi;
  double lo;
};

TwoTerm two_sum(double a, double b) {
  const double s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  return {s, (a - av) + (b - bv)};
}

TwoTerm two_product(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Shewchuk's grow-expansion: adds b into a nonoverlapping expansion kept in
// increasing order of magnitude.
void grow_expansion(std::vector<double>& e, double b) {
  double q = b;
  for (double& component : e) {
    const TwoTerm t = two_sum(q, component);
    component = t.lo;
    q = t.hi;
  }
  e.push_back(q);
}

int exact_orient2d(Point2 a, Point2 b, Point2 c) {
  const std::array<TwoTerm, 6> terms = {
      two_product(a.x, b.y),  two_product(-a.x, c.y), two_product(-c.x, b.y),
      two_product(-a.y, b.x), two_product(a.y, c.x),  two_product(c.y, b.x),
  };
  std::vector<double> expansion;
  expansion.reserve(16);
  for (const TwoTerm& t : terms) {
    grow_expansion(expansion, t.lo);
    grow_expansion(expansion, t.hi);
  }
  for (auto it = expansion.rbegin(); it != expansion.rend(); ++it) {
    if (*it > 0.0) return 1;
    if (*it < 0.0) return -1;
  }
  return 0;
}

}  // namespace

int orient2d(Point2 a, Point2 b, Point2 c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  constexpr double kErrBound = (3.0 + 16.0 * 0x1p-53) * 0x1p-53;
  const double bound = kErrBound * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return exact_orient2d(a, b, c);
}

namespace {

bool on_segment_collinear(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = orient2d(a, b, c);
  const int o2 = orient2d(a, b, d);
  const int o3 = orient2d(c, d, a);
  const int o4 = orient2d(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment_collinear(c, a, b)) return true;
  if (o2 == 0 && on_segment_collinear(d, a, b)) return true;
  if (o3 == 0 && on_segment_collinear(a, c, d)) return true;
  if (o4 == 0 && on_segment_collinear(b, c, d)) return true;
  return false;
}

Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b, double* fraction) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  if (fraction != nullptr) *fraction = s;
  return a + s * ab;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  return distance(p, closest_point_on_segment(p, a, b));
}

double segment_segment_distance(Point2 a, Point2 b, Point2 c, Point2 d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

double signed_area(std::span<const Point2> closed) {
  double twice = 0.0;
  for (std::size_t i = 0; i + 1 < closed.size(); ++i) twice += cross(closed[i], closed[i + 1]);
  return 0.5 * twice;
}

bool is_simple(std::span<const Point2> closed) {
  require(closed.size() >= 2 && closed.front() == closed.back(),
          "is_simple: polyline is not closed (first vertex must be repeated at the end)");
  const std::size_t m = closed.size() - 1;
  if (m < 3) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (closed[i] == closed[i + 1]) return false;
  }

  // Adjacent segments may only share their common vertex.
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 a = closed[i];
    const Point2 b = closed[i + 1];
    const Point2 c = closed[(i + 2) % m];
    if (orient2d(a, b, c) == 0 && dot(a - b, c - b) > 0.0) return false;
  }

  struct Span {
    double min_x, max_x, min_y, max_y;
    std::size_t index;
  };
  std::vector<Span> spans(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 a = closed[i];
    const Point2 b = closed[i + 1];
    spans[i] = {std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y), i};
  }
  std::sort(spans.begin(), spans.end(),
            [](const Span& l, const Span& r) { return l.min_x < r.min_x; });

  for (std::size_t p = 0; p < m; ++p) {
    const Span& s = spans[p];
    for (std::size_t q = p + 1; q < m && spans[q].min_x <= s.max_x; ++q) {
      const Span& t = spans[q];
      if (t.max_y < s.min_y || t.min_y > s.max_y) continue;
      const std::size_t i = s.index;
      const std::size_t j = t.index;
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap == 1 || gap == m - 1) continue;
      if (segments_intersect(closed[i], closed[i + 1], closed[j], closed[j + 1])) return false;
    }
  }
  return true;
}

}  // namespace arcmap::geometry
