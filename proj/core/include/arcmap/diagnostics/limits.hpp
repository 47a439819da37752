#pragma once

#include "arcmap/diagnostics/types.hpp"

namespace arcmap::diagnostics {

struct L1Profile {
  ArcWindow window;
  /// Defects of consecutive grid pairs (r_i, r_{i+1}).
  DefectGrid defects;
  Estimate final_mean;
  /// threshold_factor * radial_mean at the last radius.
  double threshold = 0.0;
  bool decreasing = true;
  bool cauchy = true;
};

/// Consecutive-pair Cauchy defects; the verdict requires a strictly decreasing
/// sequence (or one resting at zero) ending below the threshold.
L1Profile l1_limit_profile(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                           const QuadOverride& quad = {}, double threshold_factor = 1e-3);

struct NontangentialLimit {
  double t = 0.0;
  StolzSpec stolz;
  std::vector<cplx> central;
  std::vector<cplx> left;
  std::vector<cplx> right;
  cplx estimate{};
  /// Largest deviation from the estimate over the three rays' last two depths.
  double spread = 0.0;
  double rel_tol = 1e-3;
  bool converged = false;
};

/// Phi' along the central ray and the two edge rays of the Stolz angle at e^{it}.
NontangentialLimit estimate_nontangential_limit(const Engine& engine, double t, const StolzSpec& stolz,
                                                double rel_tol = 1e-3);
StolzSpec default_stolz();

struct MonotonicityViolation {
  double r1 = 0.0;
  double r2 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
};

struct MonotonicityReport {
  ArcWindow window;
  RadialProfile profile;
  std::vector<MonotonicityViolation> violations;
  bool monotone = true;
};

/// Strict decreases of radial_mean beyond the combined quadrature tolerance.
MonotonicityReport monotonicity_scan(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                                     const QuadOverride& quad = {});

}  // namespace arcmap::diagnostics
