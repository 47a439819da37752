#include <algorithm>
#include <cmath>
#include <numeric>

#include "arcmap/geometry/curve_io.hpp"
#include "arcmap/geometry/predicates.hpp"
#include "detail.hpp"

namespace arcmap::conformal {

using detail::kTwoPi;

namespace {

/// Root of w with nonnegative imaginary part; on the real axis the sign
/// follows `side`.
cplx sqrt_upper(cplx w, double side) {
  cplx s = std::sqrt(w);
  if (s.imag() < 0.0) s = -s;
  if (s.imag() == 0.0 && (side < 0.0) != (s.real() < 0.0)) s = -s;
  return s;
}

/// Real affine map x -> (x - offset) / scale, an automorphism of the upper
/// half plane. The chain uses it to keep the image of w0 at i.
struct Affine {
  double offset = 0.0;
  double scale = 1.0;

  static Affine centering(cplx w) { return {w.real(), w.imag()}; }
  cplx forward(cplx z) const { return (z - offset) / scale; }
  double forward(double x) const { return (x - offset) / scale; }
  cplx inverse(cplx u) const { return u * scale + offset; }
};

/// One geodesic slit map of the upper half plane, applied after shifting the
/// current tip to 0. With b the second real point of the circle through 0
/// and a orthogonal to R:
///   T = z / (1 - z/b) sends the arc 0..a onto [0, ic],
///   s = sqrt(T^2 + c^2) opens the slit,
///   u = s / (1 - s/p) sends the image of infinity back to infinity,
/// and the affine part recentres w0 at i.
struct SlitStep {
  double shift;
  double inv_b;
  double c;
  double inv_p;
  Affine affine;

  static SlitStep through(double tip, cplx a) {
    const cplx rel = a - tip;
    const double mod2 = std::norm(rel);
    const double inv_b = rel.real() / mod2;
    const double c = mod2 / rel.imag();
    return {tip, inv_b, c, -inv_b / std::sqrt(1.0 + c * c * inv_b * inv_b), {}};
  }

  /// Up to the affine part.
  cplx open(cplx z, cplx* d) const {
    const cplx zs = z - shift;
    const cplx den = 1.0 - zs * inv_b;
    const cplx t = zs / den;
    const cplx s = sqrt_upper(t * t + c * c, t.real() == 0.0 ? -1.0 : t.real());
    const cplx den2 = 1.0 - s * inv_p;
    if (d) *d *= (t / s) / (den * den) / (den2 * den2);
    return s / den2;
  }

  cplx forward(cplx z, cplx* d = nullptr) const {
    const cplx u = open(z, d);
    if (d) *d /= affine.scale;
    return affine.forward(u);
  }

  /// Points already on the real axis; the tip itself goes to the left edge.
  double forward_real(double x) const {
    const double xs = x - shift;
    const double t = xs / (1.0 - xs * inv_b);
    const double s = (t > 0.0 ? 1.0 : -1.0) * std::sqrt(t * t + c * c);
    return affine.forward(s / (1.0 - s * inv_p));
  }

  cplx inverse(cplx v, cplx* d = nullptr) const {
    // Boundary points can drift just below the axis by rounding.
    if (v.imag() < 0.0) v.imag(0.0);
    const cplx u = affine.inverse(v);
    const cplx den = 1.0 + u * inv_p;
    const cplx s = u / den;
    const cplx t = sqrt_upper(s * s - c * c, s.real());
    const cplx den2 = 1.0 + t * inv_b;
    if (d) *d *= affine.scale * (s / t) / (den * den) / (den2 * den2);
    return t / den2 + shift;
  }
};

struct ZipperParams {
  std::vector<Point2> samples;  // open list, samples[0] = p0 (sent to infinity)
  Affine first;                 // after z -> i sqrt((z - p1)/(z - p0))
  std::vector<SlitStep> steps;
  std::vector<std::size_t> step_sample;  // sample index behind each step
  double last_tip = 0.0;                 // real image of the last slit sample
  cplx q;                                // image of w0 after folding onto H
  cplx rot;                              // unit factor making Phi'(0) > 0
  cplx w0;
  std::vector<double> table_t;  // per sample
  std::size_t crowded = 0;
  std::vector<std::string> flags;
  double residual = 0.0;
};

class ZipperMap final : public RiemannMap {
 public:
  explicit ZipperMap(ZipperParams p) : p_(std::move(p)) {
    w0_ = p_.w0;
    flags_ = p_.flags;
    std::vector<Point2> closed = p_.samples;
    closed.push_back(closed.front());
    target_ = JordanCurve::from_polyline(std::move(closed));

    // Table ordered by angle, starting at the smallest parameter.
    const std::size_t n = p_.samples.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto start = std::min_element(p_.table_t.begin(), p_.table_t.end()) - p_.table_t.begin();
    std::rotate(order.begin(), order.begin() + start, order.end());
    double last = 0.0;
    for (std::size_t k : order) {
      // Crowded samples can round below their predecessor; keep the table monotone.
      last = std::max(last, p_.table_t[k]);
      table_.t.push_back(last);
      table_.points.push_back(p_.samples[k]);
    }
    boundary_residual_ = p_.residual;
  }

  EngineVariant variant() const override { return EngineVariant::kZipper; }
  std::string name() const override { return "zipper"; }

  cplx eval(cplx z) const override { return inverse_chain(z, nullptr); }

  cplx deriv(cplx z) const override {
    cplx d = 1.0;
    inverse_chain(z, &d);
    return d;
  }

  /// Inverse chain on the closed disk; boundary points follow the slit edges.
  cplx inverse_chain(cplx zeta, cplx* d) const {
    const cplx v = zeta / p_.rot;
    const cplx one_minus = 1.0 - v;
    const cplx y = (p_.q - v * std::conj(p_.q)) / one_minus;
    // Square root of -y in the closed second quadrant; folding the signs
    // absorbs rounding on the boundary axes.
    cplx u = std::sqrt(-y);
    u = cplx(-std::abs(u.real()), std::abs(u.imag()));
    if (d) *d *= (p_.q - std::conj(p_.q)) / (one_minus * one_minus) / p_.rot * (-0.5 / u);
    u += p_.last_tip;
    for (auto it = p_.steps.rbegin(); it != p_.steps.rend(); ++it) u = it->inverse(u, d);
    if (u.imag() < 0.0) u.imag(0.0);
    u = p_.first.inverse(u);
    if (d) *d *= p_.first.scale;
    const cplx w = -u * u;
    const cplx p0 = p_.samples[0].as_complex();
    const cplx p1 = p_.samples[1].as_complex();
    if (d) *d *= (p1 - p0) / ((w - 1.0) * (w - 1.0)) * (-2.0 * u);
    return (w * p0 - p1) / (w - 1.0);
  }

  nlohmann::json to_json() const override {
    auto j = common_json();
    nlohmann::json samples = nlohmann::json::array();
    for (const Point2& s : p_.samples) samples.push_back({s.x, s.y});
    nlohmann::json steps = nlohmann::json::array();
    for (std::size_t k = 0; k < p_.steps.size(); ++k) {
      const auto& s = p_.steps[k];
      steps.push_back({p_.step_sample[k], s.shift, s.inv_b, s.c, s.inv_p, s.affine.offset, s.affine.scale});
    }
    j["samples"] = samples;
    j["first"] = {p_.first.offset, p_.first.scale};
    j["steps"] = steps;
    j["last_tip"] = p_.last_tip;
    j["q"] = detail::to_json(p_.q);
    j["rotation"] = detail::to_json(p_.rot);
    j["sample_parameters"] = p_.table_t;
    j["crowded"] = p_.crowded;
    return j;
  }

 protected:
  Point2 boundary(double t) const override {
    const auto& ts = table_.t;
    const std::size_t n = ts.size();
    const std::size_t hi = std::upper_bound(ts.begin(), ts.end(), t) - ts.begin();
    const std::size_t i = hi == 0 ? n - 1 : hi - 1;
    const std::size_t j = (i + 1) % n;
    const double t0 = ts[i];
    double t1 = ts[j];
    double s = t;
    if (j == 0) {
      t1 += kTwoPi;
      if (s < t0) s += kTwoPi;
    }
    const double frac = t1 > t0 ? (s - t0) / (t1 - t0) : 0.0;
    return table_.points[i] + frac * (table_.points[j] - table_.points[i]);
  }

 private:
  ZipperParams p_;
};

/// Boundary residual: samples reproduced through the inverse chain, and the
/// images of mid-angles measured against the chord they should follow.
double measure_residual(const ZipperParams& p) {
  ZipperMap probe(p);
  const auto& table = probe.boundary_table();
  const std::size_t n = table.t.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 here(probe.inverse_chain(std::polar(1.0, table.t[k]), nullptr));
    worst = std::max(worst, geometry::distance(here, table.points[k]));
    const std::size_t next = (k + 1) % n;
    const double t1 = table.t[next] + (next == 0 ? kTwoPi : 0.0);
    if (t1 <= table.t[k]) continue;
    const Point2 mid(probe.inverse_chain(std::polar(1.0, 0.5 * (table.t[k] + t1)), nullptr));
    worst = std::max(worst, geometry::point_segment_distance(mid, table.points[k], table.points[next]));
  }
  return worst;
}

}  // namespace

Engine build_zipper(std::span<const Point2> closed, cplx w0, const ZipperOptions& options) {
  const auto curve = JordanCurve::from_polyline({closed.begin(), closed.end()});
  require(!curve.reversed_on_input(), "zipper: samples must be positively oriented");
  return build_zipper(curve, w0, options);
}

Engine build_zipper(const JordanCurve& curve, cplx w0, const ZipperOptions& options) {
  require(geometry::point_in_jordan(curve, Point2(w0)) == geometry::Location::kInside,
          "zipper: w0 must lie strictly inside the curve");
  require(options.crowding >= 0.0 && options.crowding < 1.0, "zipper: crowding tolerance must lie in [0, 1)");
  ZipperParams p;
  p.samples.assign(curve.corners().begin(), curve.corners().end());
  require(options.start < p.samples.size(), "zipper: start index out of range");
  std::rotate(p.samples.begin(), p.samples.begin() + static_cast<std::ptrdiff_t>(options.start), p.samples.end());
  p.w0 = w0;
  const std::size_t n = p.samples.size();
  if (n < options.min_samples) p.flags.push_back("low-resolution");

  const cplx p0 = p.samples[0].as_complex();
  const cplx p1 = p.samples[1].as_complex();
  auto first_map = [&](cplx z) { return cplx(0.0, 1.0) * std::sqrt((z - p1) / (z - p0)); };

  // Running images: unprocessed samples (in H), processed ones (on R), and
  // w0 (kept at i) with the derivative of the chain there.
  cplx wz = first_map(w0);
  cplx dw = cplx(0.0, 1.0) * ((p1 - p0) / ((w0 - p0) * (w0 - p0))) / (2.0 * std::sqrt((w0 - p1) / (w0 - p0)));
  p.first = Affine::centering(wz);
  dw /= p.first.scale;
  wz = p.first.forward(wz);

  std::vector<cplx> pending(n);
  for (std::size_t k = 2; k < n; ++k) pending[k] = p.first.forward(first_map(p.samples[k].as_complex()));
  std::vector<double> placed(n, 0.0);
  std::vector<bool> is_placed(n, false);
  placed[1] = p.first.forward(0.0);
  is_placed[1] = true;
  double tip = placed[1];

  for (std::size_t k = 2; k < n; ++k) {
    const cplx a = pending[k] - tip;
    const double scale = std::abs(a);
    if (!std::isfinite(scale))
      fail(ErrorKind::kBuildDegenerate, "zipper: non-finite image at sample " + std::to_string(k));
    if (!(a.imag() > options.crowding * scale) || scale == 0.0) {
      if (a.imag() < -std::max(1e-10, options.crowding) * scale || scale == 0.0)
        fail(ErrorKind::kBuildDegenerate, "zipper: slit map degenerates at sample " + std::to_string(k));
      // Crowded: the sample already sits on the axis at working precision.
      placed[k] = pending[k].real();
      is_placed[k] = true;
      ++p.crowded;
      continue;
    }
    SlitStep step = SlitStep::through(tip, pending[k]);
    step.affine = Affine::centering(step.open(wz, nullptr));
    for (std::size_t j = 1; j < k; ++j)
      if (is_placed[j]) placed[j] = step.forward_real(placed[j]);
    for (std::size_t j = k + 1; j < n; ++j) pending[j] = step.forward(pending[j]);
    wz = step.forward(wz, &dw);
    placed[k] = step.affine.forward(0.0);
    is_placed[k] = true;
    tip = placed[k];
    p.steps.push_back(step);
    p.step_sample.push_back(k);
  }
  if (p.crowded > 0) p.flags.push_back("crowded");

  // The last geodesic runs from the tip straight up to infinity; fold the
  // quadrant left of it (which holds w0) onto H, then map to the disk.
  p.last_tip = tip;
  const cplx rel = wz - tip;
  if (!(rel.real() < 0.0 && rel.imag() > 0.0))
    fail(ErrorKind::kBuildDegenerate, "zipper: interior point left the expected quadrant");
  p.q = -rel * rel;
  dw *= -2.0 * rel;
  dw /= p.q - std::conj(p.q);
  p.rot = std::conj(dw) / std::abs(dw);

  p.table_t.assign(n, 0.0);
  p.table_t[0] = detail::wrap_angle(std::arg(p.rot));
  for (std::size_t j = 1; j < n; ++j) {
    const double x = placed[j] - tip;
    const double y = -x * x;
    const cplx disk = p.rot * (y - p.q) / (y - std::conj(p.q));
    p.table_t[j] = detail::wrap_angle(std::arg(disk));
  }
  p.residual = measure_residual(p);
  return std::make_shared<ZipperMap>(std::move(p));
}

Engine detail::zipper_from_json(const nlohmann::json& j) {
  check_keys(j, {"variant", "name", "w0", "boundary_residual", "flags", "samples", "first", "steps", "last_tip",
                 "q", "rotation", "sample_parameters", "crowded"});
  ZipperParams p;
  p.w0 = cplx_from_json(j.at("w0"));
  for (const auto& s : j.at("samples")) p.samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
  p.first = {j.at("first").at(0).get<double>(), j.at("first").at(1).get<double>()};
  for (const auto& s : j.at("steps")) {
    require(s.is_array() && s.size() == 7, "engine json: zipper steps have seven entries");
    p.step_sample.push_back(s[0].get<std::size_t>());
    p.steps.push_back({s[1].get<double>(), s[2].get<double>(), s[3].get<double>(), s[4].get<double>(),
                       {s[5].get<double>(), s[6].get<double>()}});
  }
  p.last_tip = j.at("last_tip").get<double>();
  p.q = cplx_from_json(j.at("q"));
  p.rot = cplx_from_json(j.at("rotation"));
  p.table_t = j.at("sample_parameters").get<std::vector<double>>();
  p.crowded = j.at("crowded").get<std::size_t>();
  p.flags = j.at("flags").get<std::vector<std::string>>();
  p.residual = j.at("boundary_residual").get<double>();
  require(p.samples.size() >= 3 && p.table_t.size() == p.samples.size(), "engine json: inconsistent zipper data");
  return std::make_shared<ZipperMap>(std::move(p));
}

}  // namespace arcmap::conformal
