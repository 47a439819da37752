#include "arcmap/geometry/arc_length.hpp"

#include <algorithm>
#include <cmath>

#include "arcmap/error.hpp"
#include "arcmap/geometry/predicates.hpp"

namespace arcmap::geometry {

double polyline_length(std::span<const Point2> points) {
  require(points.size() >= 2, "polyline_length: needs at least two points");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    require(points[i + 1].is_finite(), "polyline_length: non-finite point");
    total += distance(points[i], points[i + 1]);
  }
  require(points.front().is_finite(), "polyline_length: non-finite point");
  return total;
}

double partition_sum(const CurveEval& curve, std::span<const double> params) {
  require(params.size() >= 2, "partition_sum: needs at least two parameters");
  for (std::size_t i = 0; i + 1 < params.size(); ++i)
    require(params[i] < params[i + 1], "partition_sum: parameters must be strictly increasing");
  double total = 0.0;
  Point2 prev = curve(params.front());
  for (std::size_t i = 1; i < params.size(); ++i) {
    const Point2 next = curve(params[i]);
    total += distance(prev, next);
    prev = next;
  }
  return total;
}

std::string to_string(LengthVerdict verdict) {
  switch (verdict) {
    case LengthVerdict::kRectifiable: return "rectifiable";
    case LengthVerdict::kDivergentAtBudget: return "divergent-at-budget";
    case LengthVerdict::kUndecided: return "undecided";
  }
  return "undecided";
}

double sampled_arc_diameter(const CurveEval& curve, double t_start, double t_end, int samples) {
  std::vector<Point2> pts(samples + 1);
  for (int i = 0; i <= samples; ++i) pts[i] = curve(t_start + (t_end - t_start) * i / samples);
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, distance(pts[i], pts[j]));
  return best;
}

LengthReport arc_length_estimate(const CurveEval& curve, double t_start, double t_end,
                                 const LadderSchedule& schedule, std::optional<double> divergence_budget,
                                 std::span<const double> breakpoints) {
  require(std::isfinite(t_start) && std::isfinite(t_end) && t_start < t_end,
          "arc_length_estimate: window must satisfy t_start < t_end");
  require(schedule.min_level >= 0 && schedule.max_level >= schedule.min_level && schedule.max_level <= 30,
          "arc_length_estimate: schedule must satisfy 0 <= min_level <= max_level <= 30");
  require(schedule.rel_tol > 0.0, "arc_length_estimate: rel_tol must be positive");

  LengthReport report;
  report.budget = divergence_budget.value_or(10.0 * sampled_arc_diameter(curve, t_start, t_end));

  std::vector<double> extra;
  for (double t : breakpoints)
    if (t > t_start && t < t_end) extra.push_back(t);
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  // Each breakpoint value is computed once; levels only add dyadic points.
  std::vector<Point2> extra_pts(extra.size());
  for (std::size_t i = 0; i < extra.size(); ++i) extra_pts[i] = curve(extra[i]);
  auto level_sum = [&](const std::vector<Point2>& dyadic) {
    if (extra.empty()) return polyline_length(dyadic);
    const std::size_t n = dyadic.size() - 1;
    std::vector<Point2> merged;
    merged.reserve(dyadic.size() + extra.size());
    std::size_t e = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double t = i == n ? t_end : t_start + (t_end - t_start) * static_cast<double>(i) / static_cast<double>(n);
      for (; e < extra.size() && extra[e] <= t; ++e)
        if (extra[e] < t) merged.push_back(extra_pts[e]);
      merged.push_back(dyadic[i]);
    }
    return polyline_length(merged);
  };

  // Each level reuses the previous level's points: only odd indices are new.
  std::vector<Point2> pts;
  int level = schedule.min_level;
  {
    const std::size_t n = std::size_t{1} << level;
    pts.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      pts[i] = curve(i == n ? t_end : t_start + (t_end - t_start) * static_cast<double>(i) / static_cast<double>(n));
  }
  int converged_streak = 0;
  for (;; ++level) {
    const double sum = level_sum(pts);
    if (!report.ladder.levels.empty()) {
      const double prev = report.ladder.levels.back().sum;
      report.last_relative_change = sum > 0.0 ? std::abs(sum - prev) / sum : 0.0;
      converged_streak = report.last_relative_change < schedule.rel_tol ? converged_streak + 1 : 0;
    }
    report.ladder.levels.push_back({level, pts.size() - 1, sum});
    report.length = sum;
    if (converged_streak >= 2) {
      report.verdict = LengthVerdict::kRectifiable;
      break;
    }
    if (sum > report.budget) {
      report.verdict = LengthVerdict::kDivergentAtBudget;
      break;
    }
    if (level >= schedule.max_level) {
      report.verdict = LengthVerdict::kUndecided;
      break;
    }
    const std::size_t n = (pts.size() - 1) * 2;
    std::vector<Point2> finer(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i % 2 == 0) {
        finer[i] = pts[i / 2];
      } else {
        finer[i] = curve(t_start + (t_end - t_start) * static_cast<double>(i) / static_cast<double>(n));
      }
    }
    pts = std::move(finer);
  }
  return report;
}

LogGrowthFit fit_log_growth(const PartitionLadder& ladder, int first_level) {
  LogGrowthFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t n = 0;
  for (const LadderLevel& l : ladder.levels) {
    if (l.level < first_level) continue;
    const double x = std::log(static_cast<double>(l.segments));
    const double y = l.sum;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  fit.points = n;
  if (n < 2) return fit;
  const double nn = static_cast<double>(n);
  const double vxx = sxx - sx * sx / nn;
  const double vxy = sxy - sx * sy / nn;
  const double vyy = syy - sy * sy / nn;
  if (vxx <= 0.0) return fit;
  fit.slope = vxy / vxx;
  fit.offset = (sy - fit.slope * sx) / nn;
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return fit;
}

}  // namespace arcmap::geometry
