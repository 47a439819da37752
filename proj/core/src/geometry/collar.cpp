#include "arcmap/geometry/collar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <unordered_map>

#include "arcmap/error.hpp"
#include "arcmap/geometry/predicates.hpp"

namespace arcmap::geometry {
namespace {

double wrap(double t, double period) {
  double u = std::fmod(t, period);
  if (u < 0.0) u += period;
  return u;
}

// Distance from p to curve({t : from <= t <= to}), with to - from <= period.
double distance_to_param_range(const JordanCurve& curve, Point2 p, double from, double to) {
  double best = std::numeric_limits<double>::infinity();
  for (auto k = static_cast<long long>(std::floor(from)); static_cast<double>(k) < to; ++k) {
    const double s0 = std::max(from, static_cast<double>(k));
    const double s1 = std::min(to, static_cast<double>(k + 1));
    if (s1 < s0) continue;
    best = std::min(best, point_segment_distance(p, curve.at(s0), curve.at(s1)));
  }
  return best;
}

Point2 unit(Point2 v) {
  const double len = norm(v);
  return len > 0.0 ? (1.0 / len) * v : v;
}

Point2 left_normal(Point2 d) { return {-d.y, d.x}; }

Point2 inward_direction(const JordanCurve& curve, double t) {
  const auto n = static_cast<double>(curve.segment_count());
  const double u = wrap(t, n);
  const auto v = curve.vertices();
  auto i = static_cast<std::size_t>(std::floor(u));
  const double frac = u - static_cast<double>(i);
  if (frac > 1e-9 && frac < 1.0 - 1e-9) return unit(left_normal(v[i + 1] - v[i]));
  const std::size_t m = curve.segment_count();
  const std::size_t k = frac >= 1.0 - 1e-9 ? (i + 1) % m : i;
  const Point2 in = unit(v[k] - v[(k + m - 1) % m]);
  const Point2 out = unit(v[k + 1] - v[k]);
  const Point2 bisector = left_normal(in) + left_normal(out);
  return norm(bisector) > 1e-12 ? unit(bisector) : unit(left_normal(out));
}

struct Foot {
  double t;
  Point2 point;
  double dist;
};

Foot nearest_boundary_point(const JordanCurve& curve, Point2 p) {
  const auto v = curve.vertices();
  Foot best{0.0, v[0], std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double frac = 0.0;
    const Point2 q = closest_point_on_segment(p, v[i], v[i + 1], &frac);
    const double d = distance(p, q);
    if (d < best.dist) best = {static_cast<double>(i) + frac, q, d};
  }
  return best;
}

bool segment_clear(const JordanCurve& curve, Point2 a, Point2 b) {
  const auto v = curve.vertices();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (segment_segment_distance(a, b, v[i], v[i + 1]) <= 0.0) return false;
  return true;
}

CollarAnchor make_anchor(const JordanCurve& curve, double t, double margin) {
  const auto n = static_cast<double>(curve.segment_count());
  CollarAnchor anchor;
  anchor.t = t;
  const Point2 base = curve.at(t);
  anchor.eta = distance_to_param_range(curve, base, t + margin, t - margin + n);
  if (!(anchor.eta > 0.0)) fail(ErrorKind::kInvalidInput, "collar_extend: eta vanished at the anchor");

  const Point2 dir = inward_direction(curve, t);
  double step = anchor.eta / 150.0;
  bool found = false;
  for (int attempt = 0; attempt < 40 && !found; ++attempt, step *= 0.5) {
    const Point2 z = base + step * dir;
    if (point_in_jordan(curve, z) == Location::kInside && distance_to_curve(curve, z) > 0.0) {
      anchor.interior = z;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::kResolutionExhausted, "collar_extend: no interior point near the anchor");

  const Foot foot = nearest_boundary_point(curve, anchor.interior);
  anchor.foot_t = foot.t;
  anchor.foot = foot.point;
  // The nearest point must come from the margin window around the anchor.
  double offset = wrap(foot.t - anchor.t, n);
  if (offset > n / 2.0) offset -= n;
  if (std::abs(offset) > margin + 1e-12)
    fail(ErrorKind::kResolutionExhausted, "collar_extend: nearest boundary point left the anchor window");
  anchor.foot_t = anchor.t + offset;
  return anchor;
}

using CellKey = std::uint64_t;

CellKey key_of(std::int32_t i, std::int32_t j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) | static_cast<std::uint32_t>(j);
}
std::int32_t key_i(CellKey k) { return static_cast<std::int32_t>(static_cast<std::uint32_t>(k >> 32)); }
std::int32_t key_j(CellKey k) { return static_cast<std::int32_t>(static_cast<std::uint32_t>(k & 0xffffffffu)); }

class InteriorGrid {
 public:
  InteriorGrid(const JordanCurve& curve, double cell) : curve_(curve), cell_(cell) {
    const auto v = curve.vertices();
    origin_ = v[0];
    for (const Point2& p : v) origin_ = {std::min(origin_.x, p.x), std::min(origin_.y, p.y)};
    origin_ = origin_ - Point2(cell, cell);
  }

  Point2 center(std::int32_t i, std::int32_t j) const {
    return origin_ + Point2((i + 0.5) * cell_, (j + 0.5) * cell_);
  }
  std::int32_t index_x(double x) const { return static_cast<std::int32_t>(std::floor((x - origin_.x) / cell_)); }
  std::int32_t index_y(double y) const { return static_cast<std::int32_t>(std::floor((y - origin_.y) / cell_)); }

  // A cell counts only when the whole closed square sits at positive distance
  // from the boundary.
  bool strictly_interior(std::int32_t i, std::int32_t j) {
    const CellKey k = key_of(i, j);
    if (auto it = cache_.find(k); it != cache_.end()) return it->second;
    const Point2 c = center(i, j);
    const bool ok = point_in_jordan(curve_, c) == Location::kInside &&
                    distance_to_curve(curve_, c) > 0.5 * std::sqrt(2.0) * cell_ * (1.0 + 1e-9);
    cache_.emplace(k, ok);
    return ok;
  }

  std::size_t explored() const { return cache_.size(); }

 private:
  const JordanCurve& curve_;
  double cell_;
  Point2 origin_;
  std::unordered_map<CellKey, bool> cache_;
};

std::vector<std::pair<CellKey, double>> spoke_cells(InteriorGrid& grid, const JordanCurve& curve, Point2 z,
                                                    double cell) {
  std::vector<std::pair<CellKey, double>> out;
  for (int radius = 3; radius <= 24 && out.empty(); radius *= 2) {
    const std::int32_t ci = grid.index_x(z.x);
    const std::int32_t cj = grid.index_y(z.y);
    for (std::int32_t i = ci - radius; i <= ci + radius; ++i) {
      for (std::int32_t j = cj - radius; j <= cj + radius; ++j) {
        const Point2 c = grid.center(i, j);
        if (distance(c, z) > radius * cell) continue;
        if (!grid.strictly_interior(i, j)) continue;
        if (!segment_clear(curve, z, c)) continue;
        out.emplace_back(key_of(i, j), distance(c, z));
      }
    }
  }
  return out;
}

std::vector<Point2> grid_connector(const JordanCurve& curve, Point2 from, Point2 to, double cell,
                                   std::size_t max_cells, std::size_t& explored) {
  InteriorGrid grid(curve, cell);
  const auto starts = spoke_cells(grid, curve, from, cell);
  const auto goals = spoke_cells(grid, curve, to, cell);
  if (starts.empty() || goals.empty())
    fail(ErrorKind::kResolutionExhausted, "collar_extend: interior points have no strictly interior grid neighbour");
  std::unordered_map<CellKey, double> goal_cost(goals.begin(), goals.end());

  constexpr CellKey kGoal = std::numeric_limits<CellKey>::max();
  constexpr CellKey kStart = kGoal - 1;
  struct Entry {
    double f;
    double g;
    CellKey key;
    bool operator>(const Entry& o) const { return f > o.f; }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::unordered_map<CellKey, double> best_g;
  std::unordered_map<CellKey, CellKey> parent;

  auto heuristic = [&](CellKey k) {
    return distance(grid.center(key_i(k), key_j(k)), to);
  };
  for (const auto& [k, cost] : starts) {
    if (auto it = best_g.find(k); it == best_g.end() || cost < it->second) {
      best_g[k] = cost;
      parent[k] = kStart;
      open.push({cost + heuristic(k), cost, k});
    }
  }

  bool reached = false;
  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    if (e.key == kGoal) {
      reached = true;
      break;
    }
    if (e.g > best_g[e.key]) continue;
    if (grid.explored() > max_cells)
      fail(ErrorKind::kResolutionExhausted, "collar_extend: connector search exceeded the cell budget");
    if (auto it = goal_cost.find(e.key); it != goal_cost.end()) {
      const double g = e.g + it->second;
      if (auto jt = best_g.find(kGoal); jt == best_g.end() || g < jt->second) {
        best_g[kGoal] = g;
        parent[kGoal] = e.key;
        open.push({g, g, kGoal});
      }
    }
    const std::int32_t i = key_i(e.key);
    const std::int32_t j = key_j(e.key);
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        if (!grid.strictly_interior(i + di, j + dj)) continue;
        const CellKey nk = key_of(i + di, j + dj);
        const double g = e.g + cell * ((di != 0 && dj != 0) ? std::sqrt(2.0) : 1.0);
        if (auto it = best_g.find(nk); it == best_g.end() || g < it->second) {
          best_g[nk] = g;
          parent[nk] = e.key;
          open.push({g + heuristic(nk), g, nk});
        }
      }
    }
  }
  explored = grid.explored();
  if (!reached) fail(ErrorKind::kResolutionExhausted, "collar_extend: no interior connector at this grid resolution");

  std::vector<CellKey> cells;
  for (CellKey k = parent[kGoal]; k != kStart; k = parent[k]) cells.push_back(k);
  std::reverse(cells.begin(), cells.end());

  // Drop cells in the middle of straight runs.
  std::vector<Point2> path{from};
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    if (idx > 0 && idx + 1 < cells.size()) {
      const auto di0 = key_i(cells[idx]) - key_i(cells[idx - 1]);
      const auto dj0 = key_j(cells[idx]) - key_j(cells[idx - 1]);
      const auto di1 = key_i(cells[idx + 1]) - key_i(cells[idx]);
      const auto dj1 = key_j(cells[idx + 1]) - key_j(cells[idx]);
      if (di0 == di1 && dj0 == dj1) continue;
    }
    path.push_back(grid.center(key_i(cells[idx]), key_j(cells[idx])));
  }
  path.push_back(to);
  return path;
}

}  // namespace

CollarResult collar_extend(const JordanCurve& curve, SubArc subarc, double margin, const CollarOptions& options) {
  const auto n = static_cast<double>(curve.segment_count());
  require(std::isfinite(subarc.t_start) && std::isfinite(subarc.t_end) && subarc.t_start < subarc.t_end,
          "collar_extend: subarc needs t_start < t_end");
  require(margin > 0.0, "collar_extend: margin must be positive");
  require(subarc.t_end - subarc.t_start + 6.0 * margin < n,
          "collar_extend: subarc leaves less than the required slack on the curve");
  require(options.cell_fraction > 0.0 && options.cell_fraction < 1.0, "collar_extend: cell_fraction must lie in (0, 1)");

  CollarResult result{curve, {}, {}, 0.0, {}, 0};
  result.before = make_anchor(curve, subarc.t_start - 2.0 * margin, margin);
  result.after = make_anchor(curve, subarc.t_end + 2.0 * margin, margin);
  const double finest = std::min(result.before.eta, result.after.eta) * options.cell_fraction;

  // Boundary piece from the first foot to the second, then back through the interior.
  std::vector<Point2> boundary_piece;
  auto push = [](std::vector<Point2>& pts, Point2 p) {
    if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
  };
  push(boundary_piece, result.before.foot);
  for (auto k = static_cast<long long>(std::floor(result.before.foot_t)) + 1;
       static_cast<double>(k) < result.after.foot_t; ++k)
    push(boundary_piece, curve.at(static_cast<double>(k)));
  push(boundary_piece, result.after.foot);

  std::vector<Point2> pts;
  std::string last_error = "collar_extend: no grid size produced a connector";
  bool done = false;
  for (double cell = std::max(curve.diameter() / 32.0, finest);; cell = std::max(0.5 * cell, finest)) {
    try {
      std::size_t explored = 0;
      auto connector = grid_connector(curve, result.before.interior, result.after.interior, cell, options.max_cells,
                                      explored);
      result.explored_cells += explored;
      pts = boundary_piece;
      for (auto it = connector.rbegin(); it != connector.rend(); ++it) push(pts, *it);
      push(pts, result.before.foot);
      if (is_simple(pts)) {
        result.connector = std::move(connector);
        result.cell_size = cell;
        done = true;
      } else {
        last_error = "collar_extend: assembled curve is not simple at this grid resolution";
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kResolutionExhausted) throw;
      last_error = e.what();
    }
    if (done || cell <= finest) break;
  }
  if (!done) fail(ErrorKind::kResolutionExhausted, last_error);
  result.curve = JordanCurve::from_polyline(std::move(pts))
                     .with_identity(JordanCurve::Kind::kPolyline, "collar-extension",
                                    {{"t_start", subarc.t_start}, {"t_end", subarc.t_end}, {"margin", margin}});
  return result;
}

}  // namespace arcmap::geometry
