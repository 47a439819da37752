#include "arcmap/diagnostics/lengths.hpp"

#include <algorithm>
#include <cmath>

#include "arcmap/diagnostics/means.hpp"
#include "arcmap/error.hpp"
#include "arcmap/parallel.hpp"

namespace arcmap::diagnostics {

namespace {

struct Node {
  double t;
  cplx w;
};

std::vector<cplx> evaluate_all(const Engine& engine, double r, const std::vector<double>& ts) {
  std::vector<cplx> out(ts.size());
  constexpr std::size_t kChunk = 256;
  parallel_for((ts.size() + kChunk - 1) / kChunk, [&](std::size_t c) {
    const std::size_t end = std::min(ts.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) out[i] = engine->eval(std::polar(r, ts[i]));
  });
  return out;
}

}  // namespace

ImageLength image_curve_length(const Engine& engine, const ArcWindow& window, double r,
                               const ImageLengthOptions& options) {
  require(std::isfinite(r) && r > 0.0 && r < 1.0, "image_curve_length: r must lie in (0, 1)");
  require(options.samples >= 2, "image_curve_length: needs at least 2 samples");
  require(options.rel_tol > 0.0, "image_curve_length: rel_tol must be positive");
  window.validate();

  std::vector<double> ts;
  for (int i = 0; i <= options.samples; ++i)
    ts.push_back(i == options.samples ? window.b : window.a + window.length() * i / options.samples);
  for (double s : window_breakpoints(engine, window, r)) ts.push_back(s);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  const auto ws = evaluate_all(engine, r, ts);
  std::vector<Node> nodes(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) nodes[i] = {ts[i], ws[i]};

  // Per segment: still refining, and the Richardson share of its parent's gain.
  std::vector<char> active(nodes.size() - 1, 1);
  std::vector<double> share(nodes.size() - 1, 0.0);

  ImageLength out;
  out.r = r;
  bool converged = false;
  double last_gain = 0.0;
  while (nodes.size() < options.max_points) {
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
      if (active[i]) mids.push_back(0.5 * (nodes[i].t + nodes[i + 1].t));
    if (mids.empty()) {
      converged = true;
      break;
    }
    const auto wm = evaluate_all(engine, r, mids);

    std::vector<Node> next;
    std::vector<char> next_active;
    std::vector<double> next_share;
    next.reserve(nodes.size() + mids.size());
    double gain = 0.0, total = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      next.push_back(nodes[i]);
      const Node& l = nodes[i];
      const Node& rt = nodes[i + 1];
      if (!active[i]) {
        next_active.push_back(0);
        next_share.push_back(share[i]);
        total += std::abs(rt.w - l.w);
        continue;
      }
      const Node mid{mids[m], wm[m]};
      ++m;
      const double h1 = std::abs(mid.w - l.w), h2 = std::abs(rt.w - mid.w);
      const double g = std::max(0.0, h1 + h2 - std::abs(rt.w - l.w));
      gain += g;
      total += h1 + h2;
      const bool keep = g > 1e-2 * options.rel_tol * (h1 + h2);
      next.push_back(mid);
      next_active.insert(next_active.end(), 2, keep ? 1 : 0);
      next_share.insert(next_share.end(), 2, g / 6.0);
    }
    next.push_back(nodes.back());
    nodes = std::move(next);
    active = std::move(next_active);
    share = std::move(next_share);
    last_gain = gain;
    if (gain <= options.rel_tol * total) {
      converged = true;
      break;
    }
  }

  double chords = 0.0, correction = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    chords += std::abs(nodes[i + 1].w - nodes[i].w);
    correction += share[i];
  }
  out.chord_sum = chords;
  out.points = nodes.size();
  out.length.value = chords + correction;
  out.length.tolerance = std::max(last_gain, 1e-15 * out.length.value);
  out.length.converged = converged;

  const Estimate mean = radial_mean(engine, window, r, options.quad);
  out.integral = {r * mean.value, r * mean.tolerance, mean.converged};
  out.consistent = std::abs(out.length.value - out.integral.value) <=
                   out.length.tolerance + out.integral.tolerance + 1e-12 * out.length.value;
  return out;
}

RadialProfile image_length_profile(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                                   const ImageLengthOptions& options) {
  validate_r_grid(grid);
  RadialProfile profile;
  profile.quantity = Quantity::kImageLength;
  profile.r = grid;
  for (double r : grid) profile.values.push_back(image_curve_length(engine, window, r, options).length);
  return profile;
}

geometry::LengthReport boundary_arc_length(const Engine& engine, const ArcWindow& window,
                                           const geometry::LadderSchedule& schedule,
                                           std::optional<double> divergence_budget) {
  window.validate();
  const geometry::CurveEval curve = [&](double t) { return engine->boundary_correspondence(t); };
  std::vector<double> corners;
  for (double s : engine->singular_angles())
    for (double c = s + 2.0 * std::numbers::pi * std::ceil((window.a - s) / (2.0 * std::numbers::pi)); c < window.b;
         c += 2.0 * std::numbers::pi)
      corners.push_back(c);
  return geometry::arc_length_estimate(curve, window.a, window.b, schedule, divergence_budget, corners);
}

Verdict to_verdict(geometry::LengthVerdict v) {
  switch (v) {
    case geometry::LengthVerdict::kRectifiable: return Verdict::kFinite;
    case geometry::LengthVerdict::kDivergentAtBudget: return Verdict::kDivergent;
    case geometry::LengthVerdict::kUndecided: return Verdict::kInconclusive;
  }
  return Verdict::kInconclusive;
}

TailLimit extrapolate_tail(const std::vector<double>& radii, const std::vector<double>& values, std::size_t tail) {
  require(!values.empty() && radii.size() == values.size(), "extrapolate_tail: needs one value per radius");
  TailLimit out;
  const std::size_t n = values.size();
  const std::size_t k = std::clamp<std::size_t>(tail, 1, n);
  out.tail_min = *std::min_element(values.end() - static_cast<std::ptrdiff_t>(k), values.end());
  out.tail_max = *std::max_element(values.end() - static_cast<std::ptrdiff_t>(k), values.end());
  out.value = values.back();
  out.method = "last";
  if (n < 3) return out;
  const double d1 = values[n - 2] - values[n - 3];
  const double d2 = values[n - 1] - values[n - 2];
  if (d2 == 0.0) {
    out.method = "stationary";
    return out;
  }
  if (!(d1 != 0.0 && d2 * d1 > 0.0)) return out;
  const double h1 = 1.0 - radii[n - 3], h2 = 1.0 - radii[n - 2], h3 = 1.0 - radii[n - 1];
  auto ratio = [&](double alpha) {
    return (std::pow(h2, alpha) - std::pow(h3, alpha)) / (std::pow(h1, alpha) - std::pow(h2, alpha));
  };
  // ratio decreases from its alpha -> 0 limit as alpha grows.
  const double target = d2 / d1;
  double lo = 1e-3, hi = 4.0;
  if (!(ratio(lo) >= target && ratio(hi) <= target)) return out;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) > target ? lo : hi) = mid;
  }
  const double alpha = 0.5 * (lo + hi);
  const double c = d2 / (std::pow(h2, alpha) - std::pow(h3, alpha));
  out.value = values[n - 1] + c * std::pow(h3, alpha);
  out.method = "power-fit";
  return out;
}

LiminfReport liminf_check(const Engine& engine, const ArcWindow& window, const std::vector<double>& grid,
                          const LiminfOptions& options) {
  validate_r_grid(grid, 1);
  LiminfReport rep;
  rep.window = window;
  rep.boundary = boundary_arc_length(engine, window, options.schedule, options.divergence_budget);
  std::vector<double> lengths;
  for (double r : grid) {
    rep.images.push_back(image_curve_length(engine, window, r, options.image));
    lengths.push_back(rep.images.back().length.value);
  }
  rep.liminf = extrapolate_tail(grid, lengths, options.tail);
  rep.margin = rep.liminf.value - rep.boundary.length;
  rep.tolerance = options.rel_tolerance * (1.0 + rep.boundary.length);
  rep.holds = rep.margin >= -rep.tolerance;
  return rep;
}

}  // namespace arcmap::diagnostics
