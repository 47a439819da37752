#pragma once

#include <span>

#include "arcmap/geometry/point.hpp"

namespace arcmap::geometry {

/// Sign of the orientation determinant of (a, b, c): +1 for a left turn,
/// -1 for a right turn, 0 for exactly collinear input. Evaluated with a
/// floating-point filter and an exact expansion fallback.
int orient2d(Point2 a, Point2 b, Point2 c);

/// True iff the closed segments [a, b] and [c, d] share at least one point.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

double point_segment_distance(Point2 p, Point2 a, Point2 b);
Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b, double* fraction = nullptr);
double segment_segment_distance(Point2 a, Point2 b, Point2 c, Point2 d);

/// Shoelace area of a closed polyline (first vertex repeated at the end).
double signed_area(std::span<const Point2> closed);

/// True iff no two non-adjacent segments of the closed polyline meet and
/// adjacent segments meet only in their shared vertex.
bool is_simple(std::span<const Point2> closed);

}  // namespace arcmap::geometry
