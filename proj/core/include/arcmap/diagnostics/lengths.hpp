#pragma once

#include <optional>

#include "arcmap/diagnostics/types.hpp"
#include "arcmap/geometry/arc_length.hpp"

namespace arcmap::diagnostics {

struct ImageLengthOptions {
  /// Initial equispaced samples of the window.
  int samples = 64;
  /// Refinement stops once a pass changes the length by less than this fraction.
  double rel_tol = 1e-6;
  std::size_t max_points = std::size_t{1} << 22;
  QuadOverride quad{};
};

struct ImageLength {
  double r = 0.0;
  /// Refined polyline length with a Richardson correction per bisected segment.
  Estimate length;
  /// Raw chord sum of the final polyline.
  double chord_sum = 0.0;
  std::size_t points = 0;
  /// r * int_a^b |Phi'(r e^{it})| dt.
  Estimate integral;
  /// |length - integral| within the combined tolerance.
  bool consistent = true;
};

/// Length of the image curve {Phi(r e^{it}): a <= t <= b}.
ImageLength image_curve_length(const Engine& engine, const ArcWindow& window, double r,
                               const ImageLengthOptions& options = {});

RadialProfile image_length_profile(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                                   const ImageLengthOptions& options = {});

/// Partition-sum ladder of t -> Phi(e^{it}) over the window; the engine's
/// singular angles join every partition.
geometry::LengthReport boundary_arc_length(const Engine& engine, const ArcWindow& window,
                                           const geometry::LadderSchedule& schedule = {},
                                           std::optional<double> divergence_budget = std::nullopt);

Verdict to_verdict(geometry::LengthVerdict v);

/// Limit of values sampled at radii r_k -> 1. The last three values are fitted
/// by L - c (1 - r)^alpha with alpha in (0, 4]; without such a fit the last
/// value is used.
struct TailLimit {
  double value = 0.0;
  double tail_min = 0.0;
  double tail_max = 0.0;
  std::string method;
};

TailLimit extrapolate_tail(const std::vector<double>& radii, const std::vector<double>& values, std::size_t tail);

struct LiminfOptions {
  geometry::LadderSchedule schedule{};
  std::optional<double> divergence_budget{};
  ImageLengthOptions image{};
  /// Points of the grid tail summarized as liminf / limsup statistics.
  std::size_t tail = 4;
  double rel_tolerance = 1e-4;
};

struct LiminfReport {
  ArcWindow window;
  geometry::LengthReport boundary;
  std::vector<ImageLength> images;
  TailLimit liminf;
  /// liminf - boundary length; the inequality holds when margin >= -tolerance.
  double margin = 0.0;
  double tolerance = 0.0;
  bool holds = true;
};

/// Compares the boundary ladder with the limit of image-curve lengths as r -> 1.
/// Violations are reported, never thrown.
LiminfReport liminf_check(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                          const LiminfOptions& options = {});

}  // namespace arcmap::diagnostics
