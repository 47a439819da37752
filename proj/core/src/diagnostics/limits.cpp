#include "arcmap/diagnostics/limits.hpp"

#include <algorithm>
#include <cmath>

#include "arcmap/diagnostics/means.hpp"
#include "arcmap/error.hpp"
#include "arcmap/parallel.hpp"

namespace arcmap::diagnostics {

L1Profile l1_limit_profile(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                           const QuadOverride& quad, double threshold_factor) {
  validate_r_grid(grid, 2);
  require(threshold_factor > 0.0, "l1_limit_profile: threshold factor must be positive");
  L1Profile out;
  out.window = window;
  const std::size_t pairs = grid.size() - 1;
  out.defects.r1.assign(grid.begin(), grid.end() - 1);
  out.defects.r2.assign(grid.begin() + 1, grid.end());
  out.defects.values.resize(pairs);
  parallel_for(pairs, [&](std::size_t i) {
    out.defects.values[i] = cauchy_defect(engine, window, grid[i], grid[i + 1], quad);
  });
  out.final_mean = radial_mean(engine, window, grid.back(), quad);
  out.threshold = threshold_factor * out.final_mean.value;
  // A defect already at zero within its tolerance cannot decrease further.
  const auto& v = out.defects.values;
  for (std::size_t i = 1; i < pairs; ++i)
    if (!(v[i].value < v[i - 1].value || (v[i].value <= v[i].tolerance && v[i - 1].value <= v[i - 1].tolerance)))
      out.decreasing = false;
  out.cauchy = out.decreasing && out.defects.values.back().value < out.threshold;
  return out;
}

StolzSpec default_stolz() {
  StolzSpec s;
  s.radii = default_r_grid(14, 2);
  return s;
}

NontangentialLimit estimate_nontangential_limit(const Engine& engine, double t, const StolzSpec& stolz,
                                                double rel_tol) {
  require(std::isfinite(t), "nt-limit: t must be finite");
  require(rel_tol > 0.0, "nt-limit: rel_tol must be positive");
  stolz.validate();
  NontangentialLimit out;
  out.t = t;
  out.stolz = stolz;
  out.rel_tol = rel_tol;
  const cplx u = std::polar(1.0, t);
  const double half = stolz.opening / 2;
  for (double r : stolz.radii) {
    const double s = 1.0 - r;
    out.central.push_back(engine->deriv(r * u));
    out.left.push_back(engine->deriv(u * (1.0 - s * std::polar(1.0, half))));
    out.right.push_back(engine->deriv(u * (1.0 - s * std::polar(1.0, -half))));
  }
  out.estimate = out.central.back();
  const std::size_t n = out.central.size();
  for (std::size_t i = n - 2; i < n; ++i)
    for (const auto* ray : {&out.central, &out.left, &out.right})
      out.spread = std::max(out.spread, std::abs((*ray)[i] - out.estimate));
  out.converged = std::isfinite(out.spread) && out.spread <= rel_tol * std::abs(out.estimate);
  return out;
}

MonotonicityReport monotonicity_scan(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                                     const QuadOverride& quad) {
  validate_r_grid(grid, 3);
  MonotonicityReport out;
  out.window = window;
  out.profile = radial_mean_profile(engine, window, grid, quad);
  const auto& v = out.profile.values;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1].value < v[i].value - (v[i].tolerance + v[i + 1].tolerance))
      out.violations.push_back({grid[i], grid[i + 1], v[i].value, v[i + 1].value});
  }
  out.monotone = out.violations.empty();
  return out;
}

}  // namespace arcmap::diagnostics
