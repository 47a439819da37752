#pragma once

#include <cstddef>

#include "arcmap/geometry/jordan_curve.hpp"

namespace arcmap::geometry {

/// Height of the oscillating top edge, y = x cos(1/x).
double candidate_top_edge(double x);

/// The top edge as a curve in its own abscissa: t = x maps to (x, x cos(1/x)).
CurveEval candidate_top_arc();

struct CandidateOptions {
  int samples_per_oscillation = 16;
  std::size_t max_segments = 2'000'000;
};

/// Polygonal boundary of the oscillating candidate domain
/// {-5 < y < x cos(1/x), 0 < x < 1} u {-5 < y < 0, -1 < x <= 0}, with the top
/// edge sampled on [epsilon, 1] by a mesh that is uniform in the phase 1/x
/// (so every half-period receives samples_per_oscillation points) and closed
/// through (epsilon, 0) along y = 0.
JordanCurve candidate_domain_boundary(double epsilon, const CandidateOptions& options = {});

/// Splits every segment longer than max_spacing into equal pieces.
std::vector<Point2> resample_polyline(std::span<const Point2> closed, double max_spacing);

}  // namespace arcmap::geometry
