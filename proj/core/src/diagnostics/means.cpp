#include "arcmap/diagnostics/means.hpp"

#include <algorithm>
#include <cmath>

#include "arcmap/error.hpp"
#include "arcmap/parallel.hpp"

namespace arcmap::diagnostics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_radius(double r, const char* what) {
  require(std::isfinite(r) && r > 0.0 && r < 1.0, std::string(what) + ": r must lie in (0, 1)");
}

Estimate to_estimate(const numerics::QuadratureResult<double>& res, const QuadratureSpec& quad, double scale = 1.0) {
  Estimate e;
  e.value = res.value * scale;
  e.tolerance = std::max({res.error * scale, quad.abs_tol * scale, quad.rel_tol * std::abs(e.value)});
  e.converged = res.converged;
  return e;
}

}  // namespace

Estimate hp_mean(const numerics::DiskFunction& f, double p, double r, const QuadratureSpec& quad,
                 std::span<const double> breakpoints) {
  require_radius(r, "hp_mean");
  require(std::isfinite(p) && p > 0.0, "hp_mean: p must be positive");
  quad.validate();
  auto integrand = [&](double t) {
    const double m = std::abs(f(std::polar(r, t)));
    return p == 1.0 ? m : std::pow(m, p);
  };
  return to_estimate(numerics::integrate(integrand, 0.0, kTwoPi, quad, breakpoints), quad, 1.0 / kTwoPi);
}

Estimate hp_mean(const Engine& engine, double p, double r, const QuadOverride& quad) {
  require_radius(r, "hp_mean");
  const auto bps = window_breakpoints(engine, ArcWindow::full_circle(), r);
  return hp_mean([&](cplx z) { return engine->deriv(z); }, p, r, resolve_quadrature(engine, quad), bps);
}

Estimate radial_mean(const Engine& engine, const ArcWindow& window, double r, const QuadOverride& quad_override) {
  require_radius(r, "radial_mean");
  window.validate();
  const QuadratureSpec quad = resolve_quadrature(engine, quad_override);
  const auto bps = window_breakpoints(engine, window, r);
  auto integrand = [&](double t) { return std::abs(engine->deriv(std::polar(r, t))); };
  return to_estimate(numerics::integrate(integrand, window.a, window.b, quad, bps), quad);
}

Estimate cauchy_defect(const Engine& engine, const ArcWindow& window, double r1, double r2,
                       const QuadOverride& quad_override) {
  require_radius(r1, "cauchy_defect");
  require_radius(r2, "cauchy_defect");
  window.validate();
  const QuadratureSpec quad = resolve_quadrature(engine, quad_override);
  if (r1 == r2) return {0.0, 0.0, true};
  // Canonical order keeps the result bit-symmetric in (r1, r2).
  const double lo = std::min(r1, r2), hi = std::max(r1, r2);
  const auto bps = window_breakpoints(engine, window, hi);
  auto integrand = [&](double t) {
    return std::abs(engine->deriv(std::polar(hi, t)) - engine->deriv(std::polar(lo, t)));
  };
  return to_estimate(numerics::integrate(integrand, window.a, window.b, quad, bps), quad);
}

RadialProfile radial_mean_profile(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                                  const QuadOverride& quad) {
  validate_r_grid(grid);
  RadialProfile profile;
  profile.quantity = Quantity::kRadialMean;
  profile.r = grid;
  profile.values.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { profile.values[i] = radial_mean(engine, window, grid[i], quad); });
  return profile;
}

}  // namespace arcmap::diagnostics
