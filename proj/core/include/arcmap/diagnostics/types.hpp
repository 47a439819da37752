#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "arcmap/conformal/engine.hpp"
#include "arcmap/numerics/quadrature.hpp"

namespace arcmap::diagnostics {

using conformal::cplx;
using conformal::Engine;
using numerics::QuadratureSpec;

/// Arc {e^{it}: a <= t <= b}. The closed full circle b = a + 2pi is allowed.
struct ArcWindow {
  double a = 0.0;
  double b = 2.0 * std::numbers::pi;

  static ArcWindow full_circle() { return {}; }
  double length() const { return b - a; }
  bool is_full_circle() const;
  void validate() const;
};

/// A computed number with its error budget. converged is false when the
/// producing routine ran out of resolution before meeting its tolerance.
struct Estimate {
  double value = 0.0;
  double tolerance = 0.0;
  bool converged = true;
};

enum class Quantity { kRadialMean, kImageLength, kHpMean };
std::string to_string(Quantity q);

struct RadialProfile {
  Quantity quantity = Quantity::kRadialMean;
  std::vector<double> r;
  std::vector<Estimate> values;
};

/// Defect values for pairs (r1, r2).
struct DefectGrid {
  std::vector<double> r1;
  std::vector<double> r2;
  std::vector<Estimate> values;
};

struct StolzSpec {
  double opening = std::numbers::pi / 2;
  /// Radii of the approach points; the depth is 1 - r.
  std::vector<double> radii;
  void validate() const;
};

enum class Verdict { kFinite, kDivergent, kInconclusive };
std::string to_string(Verdict v);

/// r_k = 1 - 2^{-k} for k = first..last; radii beyond 1 - 1e-6 are dropped.
std::vector<double> default_r_grid(int last = 14, int first = 1);
/// Strictly increasing radii inside (0, 1).
void validate_r_grid(const std::vector<double>& grid, std::size_t min_points = 1);

/// Gauss-Legendre for closed-form integrands (abs_tol 1e-10).
QuadratureSpec default_quadrature();
/// Closed-form engines keep abs_tol 1e-10; approximate engines use 1e-8.
QuadratureSpec default_quadrature(const Engine& engine);

/// Unset means the engine default.
using QuadOverride = std::optional<QuadratureSpec>;
QuadratureSpec resolve_quadrature(const Engine& engine, const QuadOverride& quad);

/// Singular angles of the engine shifted into the open window (a, b), sorted.
std::vector<double> window_breakpoints(const Engine& engine, const ArcWindow& window, double r);

}  // namespace arcmap::diagnostics
