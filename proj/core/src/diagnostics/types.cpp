#include "arcmap/diagnostics/types.hpp"

#include <algorithm>
#include <cmath>

#include "arcmap/error.hpp"
#include "arcmap/format.hpp"

namespace arcmap::diagnostics {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

bool ArcWindow::is_full_circle() const { return b - a >= kTwoPi * (1.0 - 1e-15); }

void ArcWindow::validate() const {
  require(std::isfinite(a) && std::isfinite(b), "window: endpoints must be finite");
  require(a < b, "window: needs a < b");
  require(b - a <= kTwoPi * (1.0 + 1e-15), "window: needs b <= a + 2pi");
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::kRadialMean: return "radial-mean";
    case Quantity::kImageLength: return "image-length";
    case Quantity::kHpMean: return "hp-mean";
  }
  return "radial-mean";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kFinite: return "finite";
    case Verdict::kDivergent: return "divergent";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void StolzSpec::validate() const {
  require(opening > 0.0 && opening < std::numbers::pi, "stolz: opening must lie in (0, pi)");
  validate_r_grid(radii, 2);
  const double half = opening / 2;
  for (double r : radii)
    require(1.0 - r < 2.0 * std::cos(half), "stolz: depth " + format_double(1.0 - r) + " leaves the disk on an edge ray");
}

std::vector<double> default_r_grid(int last, int first) {
  require(first >= 1 && last >= first && last <= 60, "r grid: needs 1 <= first <= last <= 60");
  std::vector<double> grid;
  for (int k = first; k <= last; ++k) {
    const double r = 1.0 - std::ldexp(1.0, -k);
    if (r > 1.0 - 1e-6) break;
    grid.push_back(r);
  }
  return grid;
}

void validate_r_grid(const std::vector<double>& grid, std::size_t min_points) {
  require(grid.size() >= min_points, "r grid: needs at least " + std::to_string(min_points) + " radii");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(grid[i] > 0.0 && grid[i] < 1.0, "r grid: radii must lie in (0, 1)");
    if (i > 0) require(grid[i] > grid[i - 1], "r grid: radii must be strictly increasing");
  }
}

QuadratureSpec default_quadrature() {
  QuadratureSpec spec;
  spec.abs_tol = 1e-10;
  spec.rel_tol = 1e-10;
  spec.max_subdivisions = 4000;
  return spec;
}

QuadratureSpec default_quadrature(const Engine& engine) {
  QuadratureSpec spec = default_quadrature();
  if (engine->variant() != conformal::EngineVariant::kClosedForm) spec.abs_tol = 1e-8;
  return spec;
}

QuadratureSpec resolve_quadrature(const Engine& engine, const QuadOverride& quad) {
  QuadratureSpec spec = quad ? *quad : default_quadrature(engine);
  spec.validate();
  return spec;
}

std::vector<double> window_breakpoints(const Engine& engine, const ArcWindow& window, double r) {
  std::vector<double> out;
  const double depth = 1.0 - r;
  for (double s : engine->singular_angles()) {
    const double base = s + kTwoPi * std::ceil((window.a - s) / kTwoPi);
    for (double c = base - kTwoPi; c < window.b + kTwoPi; c += kTwoPi) {
      // Panels graded toward the prevertex at the scale of the distance to the circle.
      for (double off : {0.0, depth, -depth, 8 * depth, -8 * depth, 64 * depth, -64 * depth}) {
        const double t = c + off;
        if (t > window.a && t < window.b) out.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace arcmap::diagnostics
