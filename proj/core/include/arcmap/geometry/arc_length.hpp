#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcmap/geometry/jordan_curve.hpp"

namespace arcmap::geometry {

/// Sum of the Euclidean lengths of consecutive segments. Needs >= 2 points.
double polyline_length(std::span<const Point2> points);

/// Chord sum sum_j |curve(t_{j+1}) - curve(t_j)| over a strictly increasing
/// parameter list with at least two entries.
double partition_sum(const CurveEval& curve, std::span<const double> params);

struct LadderLevel {
  int level = 0;
  std::size_t segments = 0;
  double sum = 0.0;
};

/// Partition sums over nested refinements; sums are non-decreasing.
struct PartitionLadder {
  std::vector<LadderLevel> levels;
  std::string refinement = "dyadic";
};

struct LadderSchedule {
  int min_level = 2;
  int max_level = 16;
  /// Convergence: relative change below this at two consecutive levels.
  double rel_tol = 1e-6;
};

enum class LengthVerdict { kRectifiable, kDivergentAtBudget, kUndecided };

std::string to_string(LengthVerdict verdict);

struct LengthReport {
  PartitionLadder ladder;
  LengthVerdict verdict = LengthVerdict::kUndecided;
  /// Last ladder value (the length itself when rectifiable).
  double length = 0.0;
  double budget = 0.0;
  double last_relative_change = 0.0;
};

/// Dyadic ladder of partition sums over [t_start, t_end]. Without an explicit
/// budget the divergence budget is ten times the diameter of the arc.
/// Breakpoints inside the interval join every level's partition.
LengthReport arc_length_estimate(const CurveEval& curve, double t_start, double t_end,
                                 const LadderSchedule& schedule = {},
                                 std::optional<double> divergence_budget = std::nullopt,
                                 std::span<const double> breakpoints = {});

/// Diameter of the sampled arc {curve(t): t in [t_start, t_end]}.
double sampled_arc_diameter(const CurveEval& curve, double t_start, double t_end, int samples = 1024);

/// Least-squares fit sum ~ offset + slope * ln N over the ladder levels.
struct LogGrowthFit {
  double slope = 0.0;
  double offset = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

LogGrowthFit fit_log_growth(const PartitionLadder& ladder, int first_level = 0);

}  // namespace arcmap::geometry
