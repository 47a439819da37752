// Acceptance run: one PASS/FAIL line per criterion, exit status = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "arcmap/conformal/engine.hpp"
#include "arcmap/diagnostics/equivalence.hpp"
#include "arcmap/diagnostics/lengths.hpp"
#include "arcmap/diagnostics/limits.hpp"
#include "arcmap/diagnostics/means.hpp"
#include "arcmap/error.hpp"
#include "arcmap/format.hpp"
#include "arcmap/geometry/arc_length.hpp"
#include "arcmap/geometry/candidate.hpp"
#include "arcmap/geometry/collar.hpp"
#include "arcmap/geometry/predicates.hpp"
#include "arcmap/harness/config.hpp"
#include "arcmap/harness/experiment.hpp"
#include "support.hpp"

using namespace arcmap;
using namespace arcmap::diagnostics;
using conformal::Engine;
using geometry::JordanCurve;
using geometry::Point2;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

Engine affine(double c) { return conformal::build_closed_form({.name = "affine", .c = c, .d = {0.5, -0.25}}); }
Engine identity() { return conformal::build_closed_form({}); }
Engine square_sc() { return conformal::build_schwarz_christoffel(JordanCurve::square(), {0.5, 0.5}); }

Engine square_zipper(int samples) {
  const auto pts = geometry::resample_polyline(JordanCurve::square().vertices(), 4.0 / samples);
  return conformal::build_zipper(pts, {0.5, 0.5});
}

// Builtin experiments, run once and shared by the criteria that quantify over them.
struct Sweep {
  std::map<std::string, harness::RunResult> runs;
  double seconds = 0.0;
};

const Sweep& sweep() {
  static const Sweep s = [] {
    Sweep out;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& name : harness::experiment_names())
      out.runs.emplace(name, harness::run_experiment(harness::builtin_config(name), false));
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }();
  return s;
}

// Proper or touching crossing of two segments, by orientation signs.
bool crosses(Point2 a, Point2 b, Point2 c, Point2 d) {
  auto orient = [](Point2 p, Point2 q, Point2 r) {
    const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return (v > 0) - (v < 0);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 <= 0 && o3 * o4 <= 0 && !(o1 == 0 && o2 == 0);
}

double seg_distance(Point2 p, Point2 a, Point2 b, double* frac) {
  const Point2 ab = b - a;
  const double len2 = geometry::dot(ab, ab);
  double s = len2 > 0 ? geometry::dot(p - a, ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  *frac = s;
  return geometry::norm(p - (a + s * ab));
}

// Collar postconditions checked without the library's location code.
bool collar_ok(const JordanCurve& original, geometry::SubArc sub, const geometry::CollarResult& r) {
  const auto v = r.curve.vertices();
  if (!geometry::is_simple(v)) return false;
  const std::vector<Point2> outline(original.vertices().begin(), original.vertices().end());
  for (const Point2& p : r.connector)
    if (testing::winding_number(outline, p) != 1) return false;
  for (std::size_t k = 0; k + 1 < r.connector.size(); ++k)
    for (std::size_t i = 0; i + 1 < outline.size(); ++i)
      if (crosses(r.connector[k], r.connector[k + 1], outline[i], outline[i + 1])) return false;
  std::vector<Point2> arc{original.at(sub.t_start)};
  for (double k = std::floor(sub.t_start) + 1.0; k < sub.t_end; k += 1.0) arc.push_back(original.at(k));
  arc.push_back(original.at(sub.t_end));
  double last = -1.0;
  for (const Point2& p : arc) {
    double best = INFINITY, where = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      double frac = 0.0;
      const double dist = seg_distance(p, v[i], v[i + 1], &frac);
      if (dist < best) best = dist, where = static_cast<double>(i) + frac;
    }
    if (best > 1e-12 || where < last) return false;
    last = where;
  }
  return true;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome closed_form_exactness() {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = default_r_grid();
  const std::vector<ArcWindow> windows = {{0.0, pi / 2}, {1.0, 4.0}, ArcWindow::full_circle()};
  double worst_defect = 0.0, worst_mean = 0.0;
  for (const auto& [engine, scale] : std::vector<std::pair<Engine, double>>{{identity(), 1.0}, {affine(2.0), 2.0}}) {
    for (const auto& w : windows) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        worst_mean = std::max(worst_mean, std::abs(radial_mean(engine, w, grid[i]).value - scale * w.length()));
        for (std::size_t j = i + 1; j < grid.size(); ++j)
          worst_defect = std::max(worst_defect, cauchy_defect(engine, w, grid[i], grid[j]).value);
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst_defect <= 1e-12 && worst_mean <= 1e-12 && secs < 1.0,
          "max defect " + fmt(worst_defect) + ", max |mean - |c|(b-a)| " + fmt(worst_mean) + ", " + fmt(secs) + " s"};
}

Outcome square_defect_tail() {
  const auto start = std::chrono::steady_clock::now();
  const auto p = l1_limit_profile(square_sc(), {-0.5, 0.5}, default_r_grid(14, 8));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double last = p.defects.values.back().value;
  return {p.decreasing && last < p.threshold && secs < 30.0,
          std::string(p.decreasing ? "strictly decreasing" : "not decreasing") + ", final defect " + fmt(last) +
              " vs 1e-3 x mean " + fmt(p.threshold) + ", " + fmt(secs) + " s"};
}

Outcome length_identity() {
  const auto il = image_curve_length(square_sc(), ArcWindow::full_circle(), 1.0 - 1e-4);
  const double rel = std::abs(il.length.value - 4.0) / 4.0;
  const bool a = rel <= 5e-3;

  double worst = 0.0;
  for (const ArcWindow& w : {ArcWindow{0.0, 1.0}, ArcWindow{2.0, 5.0}, ArcWindow::full_circle()})
    for (double r : {0.3, 0.9, 1.0 - 1e-4})
      worst = std::max(worst, std::abs(image_curve_length(identity(), w, r).length.value - r * w.length()));
  const bool b = worst <= 1e-9;

  int checked = 0, inconsistent = 0;
  for (const auto& [name, run] : sweep().runs)
    for (const auto& row : run.rows)
      if (row.quantity == "image-length-integral") {
        ++checked;
        if (row.flag != "consistent") ++inconsistent;
      }
  const bool c = checked > 0 && inconsistent == 0;
  return {a && b && c, "square L(1-1e-4) = " + format_double(il.length.value) + " (" + fmt(100 * rel) +
                           "% from 4, limit 0.5%); identity worst " + fmt(worst) + "; L = r*mean on " +
                           std::to_string(checked - inconsistent) + "/" + std::to_string(checked) + " runs"};
}

Outcome liminf_inequality() {
  int windows = 0, holding = 0, unevaluated = 0;
  double worst = INFINITY;
  for (const auto& [name, run] : sweep().runs) {
    if (run.error_kind) {
      unevaluated += static_cast<int>(harness::builtin_config(name).windows.size());
      continue;
    }
    double boundary = 0.0;
    for (const auto& row : run.rows) {
      if (row.quantity == "boundary-length") boundary = row.value;
      if (row.quantity != "liminf-margin") continue;
      ++windows;
      const double rel = row.value / boundary;
      worst = std::min(worst, rel);
      if (rel >= -1e-4 && row.flag == "holds") ++holding;
    }
  }
  std::string detail = std::to_string(holding) + "/" + std::to_string(windows) + " windows hold, worst relative margin " +
                       fmt(worst);
  if (unevaluated > 0) detail += "; " + std::to_string(unevaluated) + " candidate windows unevaluated (engine build failed)";
  return {windows > 0 && holding == windows && unevaluated == 0, detail};
}

Outcome equivalence_consistency() {
  const auto start = std::chrono::steady_clock::now();
  auto check = [](const Engine& e, const std::vector<ArcWindow>& ws, const EquivalenceBudgets& b, Verdict want) {
    int good = 0;
    for (const auto& w : ws) {
      const auto r = equivalence_suite(e, w, b);
      if (r.consistent && r.rectifiable == want) ++good;
    }
    return good;
  };
  const auto square_cfg = harness::builtin_config("square-sc");
  const int sq = check(square_sc(), {{-0.5, 0.5}, {0.3, 1.2}, {0.0, 3.0}}, {.grid = square_cfg.grid.resolve()},
                       Verdict::kFinite);
  const auto ellipse = conformal::build_zipper(JordanCurve::ellipse(2.0, 1.0, 512), {0.0, 0.0});
  const int el = check(ellipse, {{0.2, 1.5}, {2.0, 3.0}}, {}, Verdict::kFinite);

  std::string candidate;
  bool cand_ok = false;
  const auto cfg = harness::builtin_config("cos1x-candidate");
  try {
    const auto curve = harness::build_domain(cfg.domain);
    const auto engine = harness::build_engine(cfg.domain, curve, cfg.engine);
    const auto w = harness::resolve_window(engine, cfg.windows.front());
    const auto r = equivalence_suite(engine, w, {});
    cand_ok = r.consistent && r.rectifiable == Verdict::kDivergent;
    candidate = "candidate verdicts " + to_string(r.rectifiable) + "/" + to_string(r.radial_mean) + "/" +
                to_string(r.image_lengths);
  } catch (const Error& e) {
    candidate = "candidate eps=1e-3 engine: " + std::string(to_string(e.kind())) + " (" + e.what() + ")";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {sq == 3 && el == 2 && cand_ok && secs < 300.0, "square " + std::to_string(sq) + "/3 finite, ellipse " +
                                                             std::to_string(el) + "/2 finite, " + candidate + ", " +
                                                             fmt(secs) + " s"};
}

Outcome candidate_ladder() {
  const auto report = geometry::arc_length_estimate(geometry::candidate_top_arc(), 1e-4, 1.0,
                                                    {.min_level = 8, .max_level = 20, .rel_tol = 1e-9});
  const auto fit = geometry::fit_log_growth(report.ladder);
  const bool plateau = report.verdict != geometry::LengthVerdict::kUndecided;
  return {fit.slope > 0.0 && fit.r_squared > 0.99 && fit.points >= 6 && !plateau,
          "slope " + fmt(fit.slope, 4) + " (1/pi = " + fmt(1 / pi, 4) + "), R^2 " + fmt(fit.r_squared, 5) + " over " +
              std::to_string(fit.points) + " levels, verdict " + geometry::to_string(report.verdict)};
}

Outcome collar_construction() {
  const auto start = std::chrono::steady_clock::now();
  const auto trials = harness::collar_trials(20240601, {.polygons = 100, .vertices = 12, .margin = 0.05});
  int eligible = 0, passed = 0;
  for (const auto& t : trials) {
    if (t.status == "precondition") continue;
    ++eligible;
    if (t.status == "ok" && t.result && collar_ok(*t.polygon, t.subarc, *t.result)) ++passed;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {eligible > 0 && passed == eligible && secs < 60.0,
          std::to_string(passed) + "/" + std::to_string(eligible) + " eligible of 100 pass, " + fmt(secs) + " s"};
}

Outcome engine_cross_validation() {
  const auto sc = square_sc();
  const auto zip = square_zipper(1024);
  double worst = 0.0;
  for (const ArcWindow& w : {ArcWindow{-0.5, 0.5}, ArcWindow{0.3, 1.2}, ArcWindow{0.0, 3.0}, ArcWindow::full_circle()}) {
    const double a = radial_mean(sc, w, 0.99).value;
    const double b = radial_mean(zip, w, 0.99).value;
    worst = std::max(worst, std::abs(a - b) / std::abs(a));
  }
  return {worst <= 0.01, "worst relative difference " + fmt(worst) + " over 4 windows"};
}

Outcome classical_monotonicity() {
  const std::vector<std::pair<std::string, Engine>> engines = {
      {"identity", identity()},
      {"affine", affine(2.0)},
      {"univalent-poly", conformal::build_closed_form({.name = "univalent-poly", .a = {0.3, 0.2}})},
      {"square-sc", square_sc()},
      {"rectangle-sc", conformal::build_schwarz_christoffel(JordanCurve::rectangle(2.0, 1.0), {1.0, 0.5})},
      {"pentagon-sc", conformal::build_schwarz_christoffel(JordanCurve::regular_polygon(5), {0.0, 0.0})},
      {"ellipse-zipper", conformal::build_zipper(JordanCurve::ellipse(2.0, 1.0, 512), {0.0, 0.0})},
      {"square-zipper", square_zipper(1024)},
  };
  const auto grid = default_r_grid();
  int monotone = 0, window_scans = 0;
  std::string bad;
  for (const auto& [name, e] : engines) {
    const auto full = monotonicity_scan(e, ArcWindow::full_circle(), grid);
    if (full.monotone) ++monotone;
    else bad += " " + name;
    for (const ArcWindow& w : {ArcWindow{-0.5, 0.5}, ArcWindow{1.0, 2.5}}) {
      const auto r = monotonicity_scan(e, w, grid);
      if (r.profile.values.size() == grid.size()) ++window_scans;
    }
  }
  const int n = static_cast<int>(engines.size());
  return {monotone == n && window_scans == 2 * n,
          std::to_string(monotone) + "/" + std::to_string(n) + " full-circle scans monotone" +
              (bad.empty() ? "" : " (violations:" + bad + ")") + ", " + std::to_string(window_scans) +
              " window scans reported"};
}

Outcome reproducibility() {
  const auto root = std::filesystem::temp_directory_path() / "arcmap-acceptance-repro";
  std::filesystem::remove_all(root);
  int identical = 0, total = 0;
  for (const char* name : {"square-sc", "collar-extension-demo"}) {
    auto cfg = harness::builtin_config(name);
    cfg.seed = 77;
    std::string csv[2];
    for (int k = 0; k < 2; ++k) {
      cfg.output_dir = (root / (std::string(name) + "-" + std::to_string(k))).string();
      harness::run_experiment(cfg);
      csv[k] = slurp(std::filesystem::path(cfg.output_dir) / "results.csv");
    }
    ++total;
    if (!csv[0].empty() && csv[0] == csv[1]) ++identical;
  }
  std::filesystem::remove_all(root);
  return {identical == total, std::to_string(identical) + "/" + std::to_string(total) + " CSV pairs byte-identical"};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form exactness", closed_form_exactness},
      {"square defect tail (strictly between prevertices)", square_defect_tail},
      {"image length identity", length_identity},
      {"liminf inequality on builtin windows", liminf_inequality},
      {"equivalence verdicts agree", equivalence_consistency},
      {"candidate ladder grows like ln N", candidate_ladder},
      {"collar construction on random polygons", collar_construction},
      {"SC versus zipper radial means", engine_cross_validation},
      {"full-circle monotonicity", classical_monotonicity},
      {"reproducible CSV", reproducibility},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
