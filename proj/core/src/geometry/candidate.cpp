#include "arcmap/geometry/candidate.hpp"

#include <cmath>
#include <numbers>

#include "arcmap/error.hpp"

namespace arcmap::geometry {

double candidate_top_edge(double x) { return x * std::cos(1.0 / x); }

CurveEval candidate_top_arc() {
  return [](double x) { return Point2(x, candidate_top_edge(x)); };
}

JordanCurve candidate_domain_boundary(double epsilon, const CandidateOptions& options) {
  require(epsilon > 0.0 && epsilon < 1.0, "candidate_domain_boundary: epsilon must lie in (0, 1)");
  require(options.samples_per_oscillation >= 2, "candidate_domain_boundary: need >= 2 samples per oscillation");

  const double u_end = 1.0 / epsilon;
  const double du = std::numbers::pi / options.samples_per_oscillation;
  const double estimate = (u_end - 1.0) / du + 8.0;
  if (estimate > static_cast<double>(options.max_segments)) {
    fail(ErrorKind::kResourceLimit, "candidate_domain_boundary: epsilon too small, segment count would exceed " +
                                        std::to_string(options.max_segments));
  }

  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(estimate) + 8);
  pts.emplace_back(-1.0, -5.0);
  pts.emplace_back(1.0, -5.0);
  // Top edge from x = 1 leftwards, uniform in the phase u = 1/x.
  pts.emplace_back(1.0, candidate_top_edge(1.0));
  for (auto j = static_cast<long long>(std::floor(1.0 / du)) + 1;; ++j) {
    const double u = static_cast<double>(j) * du;
    if (u >= u_end) break;
    if (u <= 1.0) continue;
    const double x = 1.0 / u;
    pts.emplace_back(x, candidate_top_edge(x));
  }
  pts.emplace_back(epsilon, candidate_top_edge(epsilon));
  if (pts.back().y != 0.0) pts.emplace_back(epsilon, 0.0);
  pts.emplace_back(-1.0, 0.0);
  pts.emplace_back(-1.0, -5.0);

  return JordanCurve::from_polyline(std::move(pts))
      .with_identity(JordanCurve::Kind::kBuiltin, "cos1x-candidate",
                     {{"epsilon", epsilon}, {"samples_per_oscillation", options.samples_per_oscillation}});
}

std::vector<Point2> resample_polyline(std::span<const Point2> closed, double max_spacing) {
  require(max_spacing > 0.0, "resample_polyline: spacing must be positive");
  require(closed.size() >= 2, "resample_polyline: needs at least two points");
  std::vector<Point2> out;
  for (std::size_t i = 0; i + 1 < closed.size(); ++i) {
    const Point2 a = closed[i];
    const Point2 b = closed[i + 1];
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(distance(a, b) / max_spacing)));
    for (std::size_t k = 0; k < pieces; ++k) {
      const double s = static_cast<double>(k) / static_cast<double>(pieces);
      out.push_back(a + s * (b - a));
    }
  }
  out.push_back(closed.back());
  return out;
}

}  // namespace arcmap::geometry
