#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "arcmap/conformal/engine.hpp"
#include "arcmap/error.hpp"
#include "arcmap/geometry/candidate.hpp"
#include "arcmap/geometry/predicates.hpp"
#include "arcmap/numerics/derivative.hpp"
#include "support.hpp"

using namespace arcmap;
using namespace arcmap::conformal;
using geometry::JordanCurve;
using geometry::Point2;
using std::numbers::pi;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an arcmap::Error");
  return ErrorKind::kIoError;
}

std::vector<Point2> circle_samples(int n) {
  std::vector<Point2> pts;
  for (int k = 0; k <= n; ++k) pts.emplace_back(std::cos(2 * pi * (k % n) / n), std::sin(2 * pi * (k % n) / n));
  return pts;
}

const Engine& square_sc() {
  static const Engine e = build_schwarz_christoffel(JordanCurve::square(), {0.5, 0.5});
  return e;
}

const Engine& ellipse_zipper() {
  static const Engine e = build_zipper(JordanCurve::ellipse(2, 1, 512), 0.0);
  return e;
}

const Engine& square_zipper() {
  static const Engine e = [] {
    const auto sq = JordanCurve::square();
    const auto pts = geometry::resample_polyline(sq.vertices(), 4.0 / 1024);
    return build_zipper(pts, {0.5, 0.5});
  }();
  return e;
}

std::vector<Engine> all_engines() {
  return {build_closed_form({.name = "identity"}),
          build_closed_form({.name = "affine", .c = 2.0, .d = {3.0, -1.0}}),
          build_closed_form({.name = "univalent-poly", .a = 0.25}),
          square_sc(),
          build_schwarz_christoffel(JordanCurve::rectangle(2, 1), {1.0, 0.5}),
          ellipse_zipper(),
          square_zipper()};
}

std::complex<double> random_disk_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return std::polar(radius * std::sqrt(unit(rng)), 2 * pi * unit(rng));
}

}  // namespace

TEST_CASE("closed-form engines") {
  const auto id = build_closed_form({.name = "identity"});
  CHECK(id->evaluate({0.3, 0.4}) == cplx(0.3, 0.4));
  CHECK(id->derivative({0.1, -0.7}) == 1.0);

  const auto aff = build_closed_form({.name = "affine", .c = 2.0, .d = 3.0});
  for (cplx z : {cplx(0, 0), cplx(0.5, 0.2), cplx(-0.9, 0)}) CHECK(aff->derivative(z) == 2.0);
  CHECK(aff->evaluate(0.0) == 3.0);

  const auto poly = build_closed_form({.name = "univalent-poly", .a = 0.25});
  CHECK(std::abs(poly->derivative(0.5) - 1.25) < 1e-15);
  CHECK(std::abs(poly->derivative(-0.5) - 0.75) < 1e-15);
  CHECK(std::abs(poly->evaluate(0.8) - 0.96) < 1e-15);

  CHECK(kind_of([] { build_closed_form({.name = "univalent-poly", .a = 0.6}); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { build_closed_form({.name = "mobius"}); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([&] { id->evaluate(1.0); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([&] { id->derivative({0.8, 0.6}); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("closed-form boundary correspondence and inversion") {
  const auto id = build_closed_form({.name = "identity"});
  const Point2 b = id->boundary_correspondence(pi / 3);
  CHECK(std::abs(b.x - 0.5) < 1e-15);
  CHECK(std::abs(b.y - std::sqrt(3.0) / 2) < 1e-15);
  CHECK(std::abs(id->invert_boundary({0, 1}) - pi / 2) < 1e-12);
  CHECK(kind_of([&] { id->invert_boundary({0.5, 0}); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("square SC engine") {
  const auto& sq = square_sc();
  const auto theta = sq->singular_angles();
  REQUIRE(theta.size() == 4);
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(theta[k] - theta[k - 1] - pi / 2) < 1e-10);
  CHECK(sq->evaluate(0.0) == cplx(0.5, 0.5));
  const cplx d0 = sq->derivative(0.0);
  CHECK(d0.real() > 0.0);
  CHECK(std::abs(std::arg(d0)) < 1e-9);
  // Conformal radius of the unit square about its centre: 4 sqrt(pi) / Gamma(1/4)^2.
  CHECK(std::abs(d0.real() - 4.0 * std::sqrt(pi) / std::pow(std::tgamma(0.25), 2)) < 1e-10);

  const auto corners = sq->target().corners();
  for (double t : theta) {
    const Point2 v = sq->boundary_correspondence(t);
    double nearest = 1e9;
    for (const Point2& c : corners) nearest = std::min(nearest, geometry::distance(v, c));
    CHECK(nearest < 1e-6);
    const double back = sq->invert_boundary(v);
    CHECK(std::abs(std::remainder(back - t, 2 * pi)) < 1e-6);
  }
  for (const Point2& c : corners) {
    const double t = sq->invert_boundary(c);
    double nearest = 1e9;
    for (double s : theta) nearest = std::min(nearest, std::abs(std::remainder(t - s, 2 * pi)));
    CHECK(nearest < 1e-6);
  }
  CHECK(sq->boundary_residual() < 1e-10);
}

TEST_CASE("rectangle SC engine matches the elliptic-modulus oracle") {
  // Disk -> 2:1 rectangle: the modulus k solves 2 K(k) / K(k') = 2, found by
  // bisection on AGM values. The short side spans an arc pi - 4 atan(sqrt k).
  double lo = 1e-6, hi = 1.0 - 1e-12;
  for (int it = 0; it < 200; ++it) {
    const double k = 0.5 * (lo + hi);
    const double ratio = 2.0 * testing::elliptic_k(k) / testing::elliptic_k(std::sqrt(1 - k * k));
    (ratio < 2.0 ? lo : hi) = k;
  }
  const double k = 0.5 * (lo + hi);
  const double short_arc = pi - 4.0 * std::atan(std::sqrt(k));

  const auto rect = build_schwarz_christoffel(JordanCurve::rectangle(2, 1), {1.0, 0.5});
  const auto theta = rect->singular_angles();
  REQUIRE(theta.size() == 4);
  std::vector<double> gaps;
  for (std::size_t i = 0; i < 4; ++i) gaps.push_back(i + 1 < 4 ? theta[i + 1] - theta[i] : theta[0] + 2 * pi - theta[3]);
  std::sort(gaps.begin(), gaps.end());
  CHECK(std::abs(gaps[0] - short_arc) < 1e-8);
  CHECK(std::abs(gaps[1] - short_arc) < 1e-8);
  CHECK(std::abs(gaps[2] - (pi - short_arc)) < 1e-8);
  CHECK(std::abs(gaps[3] - (pi - short_arc)) < 1e-8);
}

TEST_CASE("SC rejects bad input") {
  CHECK(kind_of([] { build_schwarz_christoffel(JordanCurve::square(), {2.0, 0.5}); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] {
          build_schwarz_christoffel(JordanCurve::from_polyline({{0, 0}, {1, 1}, {1, 0}, {0, 1}, {0, 0}}), 0.5);
        }) == ErrorKind::kInvalidInput);
}

TEST_CASE("SC on an L-shaped polygon with a reflex corner") {
  const auto l = JordanCurve::from_polyline({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}, {0, 0}});
  const auto e = build_schwarz_christoffel(l, {0.5, 0.5});
  CHECK(e->boundary_residual() < 1e-9);
  for (double t : e->singular_angles()) {
    const Point2 v = e->boundary_correspondence(t);
    double nearest = 1e9;
    for (const Point2& c : l.corners()) nearest = std::min(nearest, geometry::distance(v, c));
    CHECK(nearest < 1e-8);
  }
}

TEST_CASE("zipper maps the circle to itself") {
  const auto z = build_zipper(circle_samples(256), 0.0);
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const cplx w = random_disk_point(rng, 0.9);
    worst = std::max(worst, std::abs(z->evaluate(w) - w));
  }
  CHECK(worst <= 1e-3);
  CHECK(z->flags().empty());
}

TEST_CASE("zipper on the ellipse") {
  const auto& e = ellipse_zipper();
  CHECK(e->boundary_residual() <= 1e-2);
  const auto& table = e->boundary_table();
  for (std::size_t k = 0; k < table.t.size(); k += 37) {
    const Point2 p = e->boundary_correspondence(table.t[k]);
    CHECK(p == table.points[k]);
  }
  for (std::size_t k = 1; k < table.t.size(); ++k) CHECK(table.t[k] > table.t[k - 1]);

  // Self-convergence: doubling the sample count shrinks the residual.
  double previous = build_zipper(JordanCurve::ellipse(2, 1, 128), 0.0)->boundary_residual();
  for (int n : {256, 512, 1024}) {
    const double r = build_zipper(JordanCurve::ellipse(2, 1, n), 0.0)->boundary_residual();
    CHECK(previous / r >= 1.5);
    previous = r;
  }
}

TEST_CASE("zipper preconditions") {
  const auto coarse = build_zipper(circle_samples(8), 0.0);
  CHECK(std::find(coarse->flags().begin(), coarse->flags().end(), "low-resolution") != coarse->flags().end());
  CHECK(coarse->boundary_residual() > 1e-3);
  CHECK(kind_of([] { build_zipper(std::vector<Point2>{{0, 0}, {1, 1}, {1, 0}, {0, 1}, {0, 0}}, 0.5); }) ==
        ErrorKind::kInvalidInput);
  CHECK(kind_of([] { build_zipper(circle_samples(64), 2.0); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("engine invariants") {
  std::mt19937_64 rng(42);
  for (const auto& e : all_engines()) {
    CAPTURE(e->name());
    // Normalization.
    CHECK(std::abs(e->evaluate(0.0) - e->w0()) <= 1e-10 * (1.0 + std::abs(e->w0())));
    CHECK(e->derivative(0.0).real() > 0.0);
    CHECK(std::abs(std::arg(e->derivative(0.0))) < 1e-9);

    // Derivative against the Cauchy-integral fallback.
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const cplx z = random_disk_point(rng, 0.9);
      const cplx fallback = numerics::complex_derivative([&](cplx w) { return e->evaluate(w); }, z);
      worst = std::max(worst, std::abs(e->derivative(z) - fallback) / std::max(1.0, std::abs(fallback)));
    }
    CHECK(worst < 1e-8);

    // Univalence spot check and interior images.
    double c = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
      const cplx z1 = random_disk_point(rng, 0.95);
      const cplx z2 = random_disk_point(rng, 0.95);
      if (z1 == z2) continue;
      c = std::min(c, std::abs(e->evaluate(z1) - e->evaluate(z2)) / std::abs(z1 - z2));
    }
    CHECK(c > 0.0);
    int outside = 0;
    for (int i = 0; i < 200; ++i)
      if (geometry::point_in_jordan(e->target(), Point2(e->evaluate(random_disk_point(rng, 0.99)))) !=
          geometry::Location::kInside)
        ++outside;
    CHECK(outside == 0);

    // Boundary traversal winds once, positively, around w0.
    std::vector<Point2> loop;
    for (int k = 0; k <= 2048; ++k) loop.push_back(e->boundary_correspondence(2 * pi * (k % 2048) / 2048));
    CHECK(testing::winding_number(loop, Point2(e->w0())) == 1);

    // Round trip through invert_boundary.
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    double t_err = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double t = angle(rng);
      const double back = e->invert_boundary(e->boundary_correspondence(t));
      t_err = std::max(t_err, std::abs(std::remainder(back - t, 2 * pi)));
    }
    CHECK(t_err < 1e-6);
  }
}

TEST_CASE("engine serialisation reloads bit-identically") {
  std::mt19937_64 rng(8);
  for (const auto& e : all_engines()) {
    CAPTURE(e->name());
    const auto text = e->to_json().dump();
    const auto back = engine_from_json(nlohmann::json::parse(text));
    CHECK(back->to_json().dump() == text);
    for (int i = 0; i < 20; ++i) {
      const cplx z = random_disk_point(rng, 0.99);
      CHECK(back->evaluate(z) == e->evaluate(z));
      CHECK(back->derivative(z) == e->derivative(z));
    }
    auto bad = e->to_json();
    bad["extra"] = 1;
    CHECK(kind_of([&] { engine_from_json(bad); }) == ErrorKind::kInvalidInput);
  }
}
