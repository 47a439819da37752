#include "arcmap/geometry/jordan_curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arcmap/error.hpp"
#include "arcmap/geometry/predicates.hpp"

namespace arcmap::geometry {

JordanCurve JordanCurve::from_polyline(std::vector<Point2> closed) {
  require(closed.size() >= 4, "JordanCurve: a closed polyline needs at least three distinct vertices");
  for (const Point2& p : closed) require(p.is_finite(), "JordanCurve: non-finite vertex");
  require(closed.front() == closed.back(), "JordanCurve: polyline is not closed");
  require(is_simple(closed), "JordanCurve: polyline is not simple");

  JordanCurve curve;
  if (geometry::signed_area(closed) < 0.0) {
    std::reverse(closed.begin(), closed.end());
    curve.reversed_on_input_ = true;
  }
  curve.vertices_ = std::move(closed);
  return curve;
}

JordanCurve JordanCurve::square(double side) {
  require(side > 0.0, "square: side must be positive");
  return rectangle(side, side).with_identity(Kind::kBuiltin, "square", {{"side", side}});
}

JordanCurve JordanCurve::rectangle(double width, double height) {
  require(width > 0.0 && height > 0.0, "rectangle: sides must be positive");
  auto curve = from_polyline({{0, 0}, {width, 0}, {width, height}, {0, height}, {0, 0}});
  return curve.with_identity(Kind::kBuiltin, "rectangle", {{"width", width}, {"height", height}});
}

JordanCurve JordanCurve::regular_polygon(int sides, double radius) {
  require(sides >= 3, "regular_polygon: needs at least three sides");
  require(radius > 0.0, "regular_polygon: radius must be positive");
  std::vector<Point2> pts;
  for (int k = 0; k <= sides; ++k) {
    const double angle = 2.0 * std::numbers::pi * (k % sides) / sides;
    pts.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
  }
  return from_polyline(std::move(pts))
      .with_identity(Kind::kBuiltin, "regular-polygon",
                     {{"sides", static_cast<double>(sides)}, {"radius", radius}});
}

JordanCurve JordanCurve::ellipse(double a, double b, int samples) {
  require(a > 0.0 && b > 0.0, "ellipse: semi-axes must be positive");
  require(samples >= 3, "ellipse: needs at least three samples");
  std::vector<Point2> pts;
  pts.reserve(samples + 1);
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * std::numbers::pi * k / samples;
    pts.emplace_back(a * std::cos(t), b * std::sin(t));
  }
  pts.push_back(pts.front());
  CurveEval param = [a, b](double t) { return Point2(a * std::cos(t), b * std::sin(t)); };
  return from_polyline(std::move(pts))
      .with_identity(Kind::kPiecewiseAnalytic, "ellipse",
                     {{"a", a}, {"b", b}, {"samples", static_cast<double>(samples)}}, std::move(param));
}

JordanCurve JordanCurve::with_identity(Kind kind, std::string name, std::map<std::string, double> params,
                                       CurveEval parametrization) const {
  JordanCurve copy = *this;
  copy.kind_ = kind;
  copy.name_ = std::move(name);
  copy.parameters_ = std::move(params);
  copy.parametrization_ = std::move(parametrization);
  return copy;
}

Point2 JordanCurve::at(double t) const {
  const double n = static_cast<double>(segment_count());
  double u = std::fmod(t, n);
  if (u < 0.0) u += n;
  auto i = static_cast<std::size_t>(std::floor(u));
  if (i >= segment_count()) i = segment_count() - 1;
  const double s = u - static_cast<double>(i);
  return vertices_[i] + s * (vertices_[i + 1] - vertices_[i]);
}

double JordanCurve::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) total += distance(vertices_[i], vertices_[i + 1]);
  return total;
}

double JordanCurve::diameter() const {
  // The diameter of a point set is attained on its convex hull.
  std::vector<Point2> pts(corners().begin(), corners().end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point2> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (const Point2& p : pts) {
      while (hull.size() >= base + 2 && orient2d(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) best = std::max(best, distance(hull[i], hull[j]));
  return best;
}

double JordanCurve::signed_area() const { return geometry::signed_area(vertices_); }

double distance_to_curve(const JordanCurve& curve, Point2 p) {
  const auto v = curve.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) best = std::min(best, point_segment_distance(p, v[i], v[i + 1]));
  return best;
}

Location point_in_jordan(const JordanCurve& curve, Point2 p) {
  require(p.is_finite(), "point_in_jordan: non-finite query point");
  const auto v = curve.vertices();
  bool inside = false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[i + 1];
    if (point_segment_distance(p, a, b) < kOnBoundaryTolerance) return Location::kOnBoundary;
    if ((a.y > p.y) != (b.y > p.y)) {
      // Sign of the crossing decided exactly.
      const int o = orient2d(a, b, p);
      if ((b.y > a.y && o > 0) || (b.y < a.y && o < 0)) inside = !inside;
    }
  }
  return inside ? Location::kInside : Location::kOutside;
}

}  // namespace arcmap::geometry
