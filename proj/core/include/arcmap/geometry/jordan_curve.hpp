#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "arcmap/geometry/point.hpp"

namespace arcmap::geometry {

using CurveEval = std::function<Point2(double)>;

/// A positively oriented simple closed polygon. Analytic builtins keep their
/// exact parametrization next to the sampled polyline.
///
/// The polyline parameter t runs over [0, segment_count()): t = i + s lies on
/// segment i at fraction s. It is periodic with period segment_count().
class JordanCurve {
 public:
  enum class Kind { kPolyline, kPiecewiseAnalytic, kBuiltin };

  /// Validates closure and simplicity. Negatively oriented input is reversed;
  /// reversed_on_input() records that it happened.
  static JordanCurve from_polyline(std::vector<Point2> closed);

  static JordanCurve square(double side = 1.0);
  static JordanCurve rectangle(double width, double height);
  static JordanCurve regular_polygon(int sides, double radius = 1.0);
  /// Ellipse with semi-axes (a, b) centred at the origin, sampled at
  /// `samples` equispaced parameter angles starting on the positive x axis.
  static JordanCurve ellipse(double a, double b, int samples);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::map<std::string, double>& parameters() const { return parameters_; }
  bool reversed_on_input() const { return reversed_on_input_; }

  /// Closed vertex list (first vertex repeated at the end).
  std::span<const Point2> vertices() const { return vertices_; }
  /// Distinct vertices (no closing repeat).
  std::span<const Point2> corners() const { return {vertices_.data(), segment_count()}; }
  std::size_t segment_count() const { return vertices_.size() - 1; }

  Point2 at(double t) const;
  double perimeter() const;
  double diameter() const;
  double signed_area() const;

  /// Exact parametrization over [0, 2pi) for analytic builtins, empty otherwise.
  const CurveEval& parametrization() const { return parametrization_; }

  JordanCurve with_identity(Kind kind, std::string name, std::map<std::string, double> params,
                            CurveEval parametrization = {}) const;

 private:
  JordanCurve() = default;

  Kind kind_ = Kind::kPolyline;
  std::string name_ = "polyline";
  std::map<std::string, double> parameters_;
  std::vector<Point2> vertices_;
  CurveEval parametrization_;
  bool reversed_on_input_ = false;
};

enum class Location { kInside, kOutside, kOnBoundary };

inline constexpr double kOnBoundaryTolerance = 1e-12;

/// Even-odd classification with an absolute on-boundary band.
Location point_in_jordan(const JordanCurve& curve, Point2 p);

/// Distance from p to the closest point of the polygon.
double distance_to_curve(const JordanCurve& curve, Point2 p);

/// A compact parameter interval [t_start, t_end] of a JordanCurve.
struct SubArc {
  double t_start = 0.0;
  double t_end = 0.0;
};

}  // namespace arcmap::geometry
