#pragma once

#include <span>

#include "arcmap/diagnostics/types.hpp"
#include "arcmap/numerics/derivative.hpp"

namespace arcmap::diagnostics {

/// (1/2pi) int_0^{2pi} |f(r e^{it})|^p dt.
Estimate hp_mean(const numerics::DiskFunction& f, double p, double r, const QuadratureSpec& quad = default_quadrature(),
                 std::span<const double> breakpoints = {});
/// hp_mean of the engine derivative, with panels aligned to its singular angles.
Estimate hp_mean(const Engine& engine, double p, double r, const QuadOverride& quad = {});

/// int_a^b |Phi'(r e^{it})| dt.
Estimate radial_mean(const Engine& engine, const ArcWindow& window, double r,
                     const QuadOverride& quad = {});

/// int_a^b |Phi'(r1 e^{it}) - Phi'(r2 e^{it})| dt; exactly 0 when r1 == r2.
Estimate cauchy_defect(const Engine& engine, const ArcWindow& window, double r1, double r2,
                       const QuadOverride& quad = {});

/// radial_mean over every radius of the grid.
RadialProfile radial_mean_profile(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                                  const QuadOverride& quad = {});

}  // namespace arcmap::diagnostics
