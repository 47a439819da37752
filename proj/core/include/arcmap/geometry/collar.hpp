#pragma once

#include <cstddef>
#include <vector>

#include "arcmap/geometry/jordan_curve.hpp"

namespace arcmap::geometry {

struct CollarOptions {
  /// Finest grid cell as a fraction of eta. The search starts at a
  /// thirty-second of the curve diameter and halves down to this size.
  double cell_fraction = 1.0 / 200.0;
  /// Search budget for the interior connector at one grid size.
  std::size_t max_cells = 4'000'000;
};

struct CollarAnchor {
  double t = 0.0;         // anchor parameter in the slack next to the subarc
  double eta = 0.0;       // distance from curve(t) to the curve outside (t - margin, t + margin)
  Point2 interior;        // interior point within eta/100 of curve(t)
  double foot_t = 0.0;    // parameter of the boundary point nearest to `interior`
  Point2 foot;
};

struct CollarResult {
  JordanCurve curve;
  CollarAnchor before;
  CollarAnchor after;
  /// Grid size that produced the connector.
  double cell_size = 0.0;
  /// Interior connector from before.interior to after.interior, endpoints included.
  std::vector<Point2> connector;
  /// Cells classified over all grid sizes tried.
  std::size_t explored_cells = 0;
};

/// Embeds the compact subarc into a polygonal Jordan curve whose interior lies
/// inside `curve`: boundary piece between the two nearest-point feet, two
/// straight spokes to interior points, and a grid path joining them.
///
/// Throws kInvalidInput when the subarc leaves less than `margin` of slack on
/// either side, kResolutionExhausted when no connector is found on the grid.
CollarResult collar_extend(const JordanCurve& curve, SubArc subarc, double margin,
                           const CollarOptions& options = {});

}  // namespace arcmap::geometry
