#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "arcmap/error.hpp"
#include "arcmap/geometry/arc_length.hpp"
#include "arcmap/geometry/candidate.hpp"
#include "arcmap/geometry/collar.hpp"
#include "arcmap/geometry/curve_io.hpp"
#include "arcmap/geometry/predicates.hpp"
#include "support.hpp"

using namespace arcmap;
using namespace arcmap::geometry;
using std::numbers::pi;

namespace {

CurveEval unit_circle() {
  return [](double t) { return Point2(std::cos(t), std::sin(t)); };
}

bool throws_kind(ErrorKind kind, const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("polyline_length") {
  CHECK(polyline_length(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}}) == 2.0);
  CHECK(polyline_length(std::vector<Point2>{{0, 0}, {0, 0}}) == 0.0);
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { polyline_length(std::vector<Point2>{{0, 0}}); }));

  // N-gon inscribed in the unit circle has perimeter 2 N sin(pi / N).
  constexpr int n = 1000;
  std::vector<Point2> pts;
  for (int k = 0; k <= n; ++k) pts.emplace_back(std::cos(2 * pi * k / n), std::sin(2 * pi * k / n));
  const double len = polyline_length(pts);
  CHECK(len == doctest::Approx(2.0 * n * std::sin(pi / n)).epsilon(1e-13));
  CHECK(std::abs(len - 2 * pi) < 1e-4);
}

TEST_CASE("partition_sum") {
  const auto circle = unit_circle();
  CHECK(partition_sum(circle, std::vector<double>{0, pi / 2, pi}) == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(partition_sum(circle, std::vector<double>{0.3, 1.1}) ==
        doctest::Approx(distance(circle(0.3), circle(1.1))));
  CHECK(throws_kind(ErrorKind::kInvalidInput, [&] { partition_sum(circle, std::vector<double>{0, 2, 1}); }));
  CHECK(throws_kind(ErrorKind::kInvalidInput, [&] { partition_sum(circle, std::vector<double>{0, 0}); }));

  double previous = 0.0;
  for (int k = 1; k <= 12; ++k) {
    const int m = 1 << k;
    std::vector<double> params;
    for (int j = 0; j <= m; ++j) params.push_back(2 * pi * j / m);
    const double s = partition_sum(circle, params);
    CHECK(s == doctest::Approx(std::pow(2.0, k + 1) * std::sin(pi / m)).epsilon(1e-13));
    CHECK(s > previous);
    CHECK(s < 2 * pi);
    previous = s;
  }
}

TEST_CASE("partition_sum never decreases when a parameter is inserted") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 6> c{};
    for (double& v : c) v = coef(rng);
    CurveEval curve = [c](double t) {
      return Point2(c[0] * std::cos(t) + c[1] * std::sin(3 * t) + c[2] * t,
                    c[3] * std::sin(t) + c[4] * std::cos(5 * t) + c[5] * t * t);
    };
    std::vector<double> params;
    for (int j = 0; j < 2 + trial % 20; ++j) params.push_back(4.0 * unit(rng));
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    if (params.size() < 2) continue;
    const double before = partition_sum(curve, params);
    const double extra = params.front() + (params.back() - params.front()) * unit(rng);
    if (std::find(params.begin(), params.end(), extra) != params.end()) continue;
    params.insert(std::upper_bound(params.begin(), params.end(), extra), extra);
    CHECK(partition_sum(curve, params) >= before * (1.0 - 1e-14));
  }
}

TEST_CASE("polyline_length equals the partition sum over the curve's own vertex parameters") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto curve = JordanCurve::from_polyline(testing::random_star_polygon(rng, 5 + trial));
    std::vector<double> params;
    for (std::size_t k = 0; k <= curve.segment_count(); ++k) params.push_back(static_cast<double>(k));
    const CurveEval eval = [&curve](double t) { return curve.at(t); };
    CHECK(partition_sum(eval, params) == doctest::Approx(polyline_length(curve.vertices())).epsilon(1e-14));
  }
}

TEST_CASE("arc_length_estimate") {
  SUBCASE("half circle converges to pi") {
    const auto report = arc_length_estimate(unit_circle(), 0.0, pi, {.min_level = 2, .max_level = 16});
    CHECK(report.verdict == LengthVerdict::kRectifiable);
    CHECK(std::abs(report.length - pi) < 1e-6);
    for (std::size_t i = 1; i < report.ladder.levels.size(); ++i)
      CHECK(report.ladder.levels[i].sum >= report.ladder.levels[i - 1].sum);
  }
  SUBCASE("two sides of the unit square are exactly 2 once the corner is a node") {
    const auto square = JordanCurve::square();
    const CurveEval eval = [&square](double t) { return square.at(t); };
    const auto report = arc_length_estimate(eval, 0.0, 2.0, {.min_level = 1, .max_level = 10});
    CHECK(report.verdict == LengthVerdict::kRectifiable);
    for (const auto& level : report.ladder.levels) CHECK(level.sum == 2.0);
  }
  SUBCASE("candidate top arc grows like ln N") {
    // Half-period k of cos(1/x) spans about 1/(k^2 pi) in x and contributes a
    // vertical excursion of about 2/(k pi); a uniform mesh of N cells resolves
    // k up to ~sqrt(N), so the ladder grows like (1/pi) ln N.
    const auto report =
        arc_length_estimate(candidate_top_arc(), 1e-4, 1.0, {.min_level = 8, .max_level = 20, .rel_tol = 1e-9});
    CHECK(report.verdict == LengthVerdict::kUndecided);
    const auto fit = fit_log_growth(report.ladder);
    CHECK(fit.points == 13);
    CHECK(fit.r_squared > 0.99);
    CHECK(fit.slope == doctest::Approx(1.0 / pi).epsilon(0.2));
  }
  SUBCASE("divergence budget") {
    const auto report = arc_length_estimate(candidate_top_arc(), 1e-4, 1.0, {.min_level = 4, .max_level = 20}, 2.0);
    CHECK(report.verdict == LengthVerdict::kDivergentAtBudget);
    CHECK(report.length > 2.0);
  }
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { arc_length_estimate(unit_circle(), 1.0, 1.0); }));
}

TEST_CASE("orient2d is exact on near-degenerate input") {
  const Point2 a{0.5, 0.5};
  const Point2 b{12.0, 12.0};
  const Point2 c{24.0, 24.0};
  CHECK(orient2d(a, b, c) == 0);
  const Point2 nudged{24.0, std::nextafter(24.0, 25.0)};
  CHECK(orient2d(a, b, nudged) == 1);
  CHECK(orient2d(a, nudged, b) == -1);
}

TEST_CASE("is_simple") {
  CHECK(is_simple(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}));
  CHECK_FALSE(is_simple(std::vector<Point2>{{0, 0}, {1, 1}, {1, 0}, {0, 1}, {0, 0}}));
  CHECK_FALSE(is_simple(std::vector<Point2>{{0, 0}, {2, 0}, {1, 0}, {1, 1}, {0, 0}}));  // folds back
  CHECK_FALSE(is_simple(std::vector<Point2>{{0, 0}, {2, 0}, {2, 2}, {1, 0}, {0, 2}, {0, 0}}));  // touches
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { is_simple(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}}); }));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(is_simple(testing::random_hull_polygon(rng, 10 + trial)));
    CHECK(is_simple(testing::random_star_polygon(rng, 4 + trial)));
  }
}

TEST_CASE("point_in_jordan") {
  const auto square = JordanCurve::square();
  CHECK(point_in_jordan(square, {0.5, 0.5}) == Location::kInside);
  CHECK(point_in_jordan(square, {2, 0}) == Location::kOutside);
  CHECK(point_in_jordan(square, {1, 0.5}) == Location::kOnBoundary);
  CHECK(point_in_jordan(square, {0, 0}) == Location::kOnBoundary);
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] {
    JordanCurve::from_polyline({{0, 0}, {1, 1}, {1, 0}, {0, 1}, {0, 0}});
  }));
}

TEST_CASE("point_in_jordan agrees with a winding-number brute force") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> coord(-1.2, 1.2);
  for (int poly = 0; poly < 6; ++poly) {
    const auto pts = poly % 2 == 0 ? testing::random_star_polygon(rng, 7 + 3 * poly)
                                   : testing::random_hull_polygon(rng, 30);
    const auto curve = JordanCurve::from_polyline(pts);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
      const Point2 p{coord(rng), coord(rng)};
      const Location loc = point_in_jordan(curve, p);
      if (loc == Location::kOnBoundary) continue;
      const bool inside = testing::winding_number(pts, p) != 0;
      if (inside != (loc == Location::kInside)) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("negatively oriented input is reversed") {
  const auto curve = JordanCurve::from_polyline({{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 0}});
  CHECK(curve.reversed_on_input());
  CHECK(curve.signed_area() == doctest::Approx(1.0));
}

namespace {

// Checks the three collar postconditions; returns the number of failures.
int collar_violations(const JordanCurve& original, const SubArc& sub, const CollarResult& r) {
  int bad = 0;
  const auto v = r.curve.vertices();
  if (!is_simple(v)) ++bad;
  for (std::size_t k = 1; k + 1 < r.connector.size(); ++k)
    if (point_in_jordan(original, r.connector[k]) != Location::kInside) ++bad;
  for (const Point2& z : {r.connector.front(), r.connector.back()})
    if (point_in_jordan(original, z) != Location::kInside) ++bad;

  // Subarc vertices appear on the new curve, in order.
  std::vector<Point2> arc{original.at(sub.t_start)};
  for (auto k = static_cast<long long>(std::floor(sub.t_start)) + 1; static_cast<double>(k) < sub.t_end; ++k)
    arc.push_back(original.at(static_cast<double>(k)));
  arc.push_back(original.at(sub.t_end));
  double last_param = -1.0;
  for (const Point2& p : arc) {
    double best = 1e300, where = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      double frac = 0.0;
      const Point2 q = closest_point_on_segment(p, v[i], v[i + 1], &frac);
      if (distance(p, q) < best) best = distance(p, q), where = static_cast<double>(i) + frac;
    }
    if (best > 1e-12) ++bad;
    if (where < last_param) ++bad;
    last_param = where;
  }
  return bad;
}

}  // namespace

TEST_CASE("collar_extend") {
  const auto square = JordanCurve::square();
  SUBCASE("part of the bottom edge") {
    const SubArc sub{0.25, 0.75};
    const auto r = collar_extend(square, sub, 0.05);
    CHECK(collar_violations(square, sub, r) == 0);
    CHECK(r.before.eta == doctest::Approx(0.05));
    CHECK(distance(r.before.interior, square.at(r.before.t)) < r.before.eta / 100.0);
    CHECK(r.curve.signed_area() > 0.0);
    CHECK(r.curve.signed_area() < square.signed_area());
  }
  SUBCASE("three full sides") {
    const SubArc sub{0.0, 3.0};
    const auto r = collar_extend(square, sub, 0.05);
    CHECK(collar_violations(square, sub, r) == 0);
  }
  SUBCASE("no slack") {
    CHECK(throws_kind(ErrorKind::kInvalidInput, [&] { collar_extend(square, {0.0, 3.999}, 0.05); }));
    CHECK(throws_kind(ErrorKind::kInvalidInput, [&] { collar_extend(square, {0.5, 0.25}, 0.05); }));
  }
  SUBCASE("non-convex polygon") {
    // U shape: the connector has to travel around the notch.
    const auto u = JordanCurve::from_polyline(
        {{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}, {0, 0}});
    const SubArc sub{2.2, 2.8};
    const auto r = collar_extend(u, sub, 0.05);
    CHECK(collar_violations(u, sub, r) == 0);
  }
}

TEST_CASE("candidate_domain_boundary") {
  CHECK(candidate_top_edge(1.0 / pi) == doctest::Approx(-1.0 / pi));
  CHECK(candidate_top_edge(1.0) == doctest::Approx(std::cos(1.0)));
  CHECK(candidate_top_edge(1.0) == doctest::Approx(0.5403).epsilon(1e-4));

  const double eps = 1e-2;
  const auto curve = candidate_domain_boundary(eps);
  CHECK(is_simple(curve.vertices()));
  CHECK(curve.signed_area() > 0.0);
  auto has = [&](Point2 p) {
    return std::find(curve.vertices().begin(), curve.vertices().end(), p) != curve.vertices().end();
  };
  CHECK(has({1, -5}));
  CHECK(has({-1, -5}));
  CHECK(has({-1, 0}));
  CHECK(has({eps, candidate_top_edge(eps)}));
  CHECK(has({eps, 0}));

  // Shrinking epsilon keeps adding oscillation length.
  double previous = 0.0;
  for (double e = 0.02; e > 1e-4; e /= 2) {
    const double len = candidate_domain_boundary(e).perimeter();
    CHECK(len > previous);
    previous = len;
  }
  CHECK(throws_kind(ErrorKind::kResourceLimit, [] { candidate_domain_boundary(1e-7, {.max_segments = 10000}); }));
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { candidate_domain_boundary(0.0); }));
}

TEST_CASE("candidate top arc converges on a window away from the origin") {
  const auto report =
      arc_length_estimate(candidate_top_arc(), 0.2, 1.0, {.min_level = 4, .max_level = 22, .rel_tol = 1e-6});
  CHECK(report.verdict == LengthVerdict::kRectifiable);
}

TEST_CASE("curve serialisation round trips") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto curve = JordanCurve::from_polyline(testing::random_star_polygon(rng, 9));
    std::stringstream text;
    write_vertex_text(text, curve);
    const auto pts = read_vertex_text(text);
    CHECK(std::equal(pts.begin(), pts.end(), curve.vertices().begin(), curve.vertices().end()));
    const auto back = curve_from_json(curve_to_json(curve));
    CHECK(std::equal(back.vertices().begin(), back.vertices().end(), curve.vertices().begin(), curve.vertices().end()));
  }
  const auto ellipse = JordanCurve::ellipse(2, 1, 64);
  const auto again = curve_from_json(curve_to_json(ellipse));
  CHECK(static_cast<bool>(again.parametrization()));

  nlohmann::json bad = curve_to_json(JordanCurve::square());
  bad["colour"] = "red";
  CHECK(throws_kind(ErrorKind::kInvalidInput, [&] { curve_from_json(bad); }));
  std::stringstream garbage("0 0\n1 x\n");
  CHECK(throws_kind(ErrorKind::kInvalidInput, [&] { read_vertex_text(garbage); }));
}
