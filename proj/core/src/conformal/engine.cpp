#include "arcmap/conformal/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcmap/geometry/curve_io.hpp"
#include "arcmap/geometry/predicates.hpp"
#include "detail.hpp"

namespace arcmap::conformal {

using detail::kTwoPi;

std::string_view to_string(EngineVariant v) {
  switch (v) {
    case EngineVariant::kClosedForm: return "closed-form";
    case EngineVariant::kSchwarzChristoffel: return "schwarz-christoffel";
    case EngineVariant::kZipper: return "zipper";
  }
  return "unknown";
}

namespace {

void check_disk(cplx z) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), "engine: non-finite argument");
  require(std::abs(z) < 1.0, "engine: argument must satisfy |z| < 1");
}

}  // namespace

cplx RiemannMap::evaluate(cplx z) const {
  check_disk(z);
  return eval(z);
}

cplx RiemannMap::derivative(cplx z) const {
  check_disk(z);
  return deriv(z);
}

Point2 RiemannMap::boundary_correspondence(double t) const {
  require(std::isfinite(t), "boundary_correspondence: non-finite angle");
  return boundary(detail::wrap_angle(t));
}

double RiemannMap::boundary_tolerance() const {
  return std::max(1e-9 * (1.0 + target_.diameter()), 10.0 * boundary_residual_);
}

double RiemannMap::invert_boundary(Point2 p) const {
  require(p.is_finite(), "invert_boundary: non-finite point");
  const auto& t = table_.t;
  const auto& pts = table_.points;
  const std::size_t n = t.size();

  // Nearest chord of the table polygon.
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    if (pts[k] == p) return t[k];
    const double d = geometry::point_segment_distance(p, pts[k], pts[(k + 1) % n]);
    if (d < best_dist) best_dist = d, best = k;
  }

  // Golden-section search for the closest boundary image over the chord and
  // its two neighbours (unwrapped angles).
  auto angle_at = [&](long k) {
    const long m = static_cast<long>(n);
    const long wraps = (k >= 0 ? k / m : -((-k + m - 1) / m));
    return t[static_cast<std::size_t>(k - wraps * m)] + kTwoPi * static_cast<double>(wraps);
  };
  double lo = angle_at(static_cast<long>(best) - 1);
  double hi = angle_at(static_cast<long>(best) + 2);
  auto gap = [&](double s) { return geometry::distance(boundary(detail::wrap_angle(s)), p); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = gap(x1), f2 = gap(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 <= f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = gap(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = gap(x2);
    }
  }
  const double s = f1 <= f2 ? x1 : x2;
  const double d = std::min(f1, f2);
  if (!(d <= boundary_tolerance()))
    fail(ErrorKind::kInvalidInput, "invert_boundary: point is not on the target curve");
  return detail::wrap_angle(s);
}

void RiemannMap::sample_boundary_table(int samples, std::span<const double> extra) {
  std::vector<double> ts;
  for (int k = 0; k < samples; ++k) ts.push_back(kTwoPi * k / samples);
  for (double e : extra) ts.push_back(detail::wrap_angle(e));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  table_.t = ts;
  table_.points.clear();
  for (double s : ts) table_.points.push_back(boundary(s));
}

nlohmann::json RiemannMap::common_json() const {
  return {{"variant", std::string(to_string(variant()))},
          {"name", name()},
          {"w0", detail::to_json(w0_)},
          {"boundary_residual", boundary_residual_},
          {"flags", flags_}};
}

namespace detail {

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed) {
  require(j.is_object(), "engine json: expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    require(known, "engine json: unknown key '" + key + "'");
  }
}

}  // namespace detail

Engine engine_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("variant") && j["variant"].is_string(), "engine json: missing variant");
  const std::string v = j["variant"];
  if (v == "closed-form") return detail::closed_form_from_json(j);
  if (v == "schwarz-christoffel") return detail::schwarz_christoffel_from_json(j);
  if (v == "zipper") return detail::zipper_from_json(j);
  fail(ErrorKind::kInvalidInput, "engine json: unknown variant '" + v + "'");
}

// ---------------------------------------------------------------------------
// Closed forms.

namespace {

class ClosedFormMap final : public RiemannMap {
 public:
  explicit ClosedFormMap(ClosedFormSpec spec) : spec_(std::move(spec)) {
    const auto& n = spec_.name;
    if (n == "identity") {
      spec_.c = 1.0, spec_.d = 0.0, spec_.a = 0.0;
    } else if (n == "affine") {
      require(std::abs(spec_.c) > 0.0, "affine: c must be nonzero");
      spec_.a = 0.0;
    } else if (n == "univalent-poly") {
      require(std::abs(spec_.a) <= 0.5, "univalent-poly: |a| must not exceed 1/2");
      spec_.c = 1.0, spec_.d = 0.0;
    } else {
      fail(ErrorKind::kInvalidInput, "closed-form: unknown map '" + n + "'");
    }
    for (cplx v : {spec_.a, spec_.c, spec_.d})
      require(std::isfinite(v.real()) && std::isfinite(v.imag()), "closed-form: non-finite parameter");
    w0_ = spec_.d;
    sample_boundary_table(4096);
    std::vector<Point2> closed = table_.points;
    closed.push_back(closed.front());
    target_ = JordanCurve::from_polyline(std::move(closed));
  }

  EngineVariant variant() const override { return EngineVariant::kClosedForm; }
  std::string name() const override { return spec_.name; }

  cplx eval(cplx z) const override { return spec_.c * z * (1.0 + spec_.a * z) + spec_.d; }
  cplx deriv(cplx z) const override { return spec_.c * (1.0 + 2.0 * spec_.a * z); }

  nlohmann::json to_json() const override {
    auto j = common_json();
    j["c"] = detail::to_json(spec_.c);
    j["d"] = detail::to_json(spec_.d);
    j["a"] = detail::to_json(spec_.a);
    return j;
  }

 protected:
  Point2 boundary(double t) const override { return Point2(eval(std::polar(1.0, t))); }

 private:
  ClosedFormSpec spec_;
};

}  // namespace

Engine build_closed_form(const ClosedFormSpec& spec) { return std::make_shared<ClosedFormMap>(spec); }

Engine detail::closed_form_from_json(const nlohmann::json& j) {
  check_keys(j, {"variant", "name", "w0", "boundary_residual", "flags", "c", "d", "a"});
  ClosedFormSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.c = cplx_from_json(j.at("c"));
  spec.d = cplx_from_json(j.at("d"));
  spec.a = cplx_from_json(j.at("a"));
  return build_closed_form(spec);
}

}  // namespace arcmap::conformal
