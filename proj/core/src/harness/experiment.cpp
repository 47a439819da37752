#include "arcmap/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "arcmap/diagnostics/equivalence.hpp"
#include "arcmap/diagnostics/lengths.hpp"
#include "arcmap/diagnostics/limits.hpp"
#include "arcmap/diagnostics/means.hpp"
#include "arcmap/format.hpp"
#include "arcmap/geometry/candidate.hpp"
#include "arcmap/geometry/curve_io.hpp"
#include "arcmap/geometry/predicates.hpp"
#include "arcmap/harness/emit.hpp"

#ifndef ARCMAP_VERSION
#define ARCMAP_VERSION "0.0.0"
#endif

namespace arcmap::harness {

namespace d = diagnostics;
using conformal::cplx;
using conformal::Engine;
using geometry::JordanCurve;
using geometry::Point2;
using nlohmann::json;

namespace {

constexpr double kNone = d::CsvRow::kNone;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool is_polygon_builtin(const std::string& name) {
  return name == "square" || name == "rectangle" || name == "regular-polygon";
}

d::CsvRow base_row(const d::RowContext& ctx) {
  d::CsvRow row;
  row.experiment = ctx.experiment;
  row.domain = ctx.domain;
  row.engine = ctx.engine;
  return row;
}

std::string window_tag(const d::ArcWindow& w) { return "[" + format_double(w.a) + "," + format_double(w.b) + "]"; }

json curve_summary(const JordanCurve& c) {
  return {{"name", c.name()},
          {"segments", c.segment_count()},
          {"perimeter", c.perimeter()},
          {"diameter", c.diameter()},
          {"area", c.signed_area()}};
}

json engine_summary(const Engine& e, double build_seconds) {
  return {{"variant", std::string(conformal::to_string(e->variant()))},
          {"name", e->name()},
          {"w0", json::array({e->w0().real(), e->w0().imag()})},
          {"boundary_residual", e->boundary_residual()},
          {"boundary_samples", e->boundary_table().t.size()},
          {"singular_angles", e->singular_angles()},
          {"flags", e->flags()},
          {"build_seconds", build_seconds}};
}

class Runner {
 public:
  Runner(const ExperimentConfig& config, RunResult& out, bool write_files)
      : config_(config), out_(out), write_files_(write_files) {}

  void run();

 private:
  void operation(const std::string& name, int window, const std::function<json()>& body);
  void run_ladder();
  void run_collar();
  void run_window_ops(std::size_t index, const d::ArcWindow& w);
  void run_global_ops();
  void issue(const std::string& text) { out_.issues.push_back(text); }
  void scan_rows(std::size_t from);

  void write_outputs();

  const ExperimentConfig& config_;
  RunResult& out_;
  bool write_files_ = true;
  d::RowContext ctx_;
  Engine engine_;
  std::vector<d::ArcWindow> windows_;
  json operations_ = json::array();
  std::vector<Plot> plots_;
  std::vector<std::string> plot_names_;
  Plot profiles_{"radial mean profiles", "1 - r", "radial mean", {}};
  Plot images_{"image curve lengths", "1 - r", "image length", {}};
  Plot defects_{"Cauchy defects of consecutive radii", "1 - r1", "defect", {}};
  Plot monotone_{"radial mean monotonicity", "1 - r", "radial mean", {}};
};

void Runner::operation(const std::string& name, int window, const std::function<json()>& body) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t first_row = out_.rows.size();
  json report = body();
  json entry = {{"operation", name}, {"seconds", seconds_since(start)}, {"report", std::move(report)}};
  if (window >= 0) entry["window"] = window;
  operations_.push_back(std::move(entry));
  scan_rows(first_row);
}

// Accuracy and consistency flags in freshly appended rows.
void Runner::scan_rows(std::size_t from) {
  for (std::size_t i = from; i < out_.rows.size(); ++i) {
    const auto& row = out_.rows[i];
    if (is_issue_flag(row.flag))
      issue(row.quantity + " " + row.flag + " on [" + format_double(row.a) + "," + format_double(row.b) + "]");
  }
}

void Runner::run_ladder() {
  operation("ladder", -1, [&] {
    const auto report = geometry::arc_length_estimate(
        geometry::candidate_top_arc(), config_.ladder.epsilon, 1.0,
        {.min_level = config_.ladder.min_level, .max_level = config_.ladder.max_level, .rel_tol = 1e-9});
    const auto fit = geometry::fit_log_growth(report.ladder);
    for (const auto& level : report.ladder.levels) {
      auto row = base_row(ctx_);
      row.a = config_.ladder.epsilon;
      row.b = 1.0;
      row.quantity = "ladder-sum";
      row.value = level.sum;
      row.flag = "segments=" + std::to_string(level.segments);
      out_.rows.push_back(row);
    }
    const bool grows = fit.slope > 0.0 && fit.r_squared > 0.99 && fit.points >= 6 &&
                       report.verdict != geometry::LengthVerdict::kDivergentAtBudget;
    auto row = base_row(ctx_);
    row.a = config_.ladder.epsilon;
    row.b = 1.0;
    row.quantity = "ladder-fit-slope";
    row.value = fit.slope;
    row.flag = grows ? "log-growth" : "no-log-growth";
    out_.rows.push_back(row);
    row.quantity = "ladder-fit-r2";
    row.value = fit.r_squared;
    out_.rows.push_back(row);
    plots_.push_back({"partition sums of the oscillating top arc", "segments N", "partition sum",
                      {ladder_series(report.ladder, "ladder-sum [" + format_double(config_.ladder.epsilon) + ",1]")}});
    plot_names_.push_back("ladder.svg");
    return json{{"epsilon", config_.ladder.epsilon},
                {"length", d::to_json(report)},
                {"fit",
                 {{"slope", fit.slope}, {"offset", fit.offset}, {"r_squared", fit.r_squared}, {"points", fit.points}}},
                {"log_growth", grows}};
  });
}

void Runner::run_collar() {
  operation("collar", -1, [&] {
    const auto trials = collar_trials(config_.seed, config_.collar);
    json list = json::array();
    int eligible = 0, passed = 0;
    for (const auto& t : trials) {
      auto row = base_row(ctx_);
      row.a = t.subarc.t_start;
      row.b = t.subarc.t_end;
      row.quantity = "collar-perimeter";
      row.value = t.status == "precondition" ? kNone : t.perimeter;
      row.flag = t.status;
      out_.rows.push_back(row);
      if (t.status != "precondition") ++eligible;
      if (t.status == "ok") ++passed;
      list.push_back({{"index", t.index},
                      {"vertices", t.vertices},
                      {"subarc", {t.subarc.t_start, t.subarc.t_end}},
                      {"status", t.status},
                      {"violations", t.violations},
                      {"perimeter", t.perimeter}});
    }
    auto row = base_row(ctx_);
    row.quantity = "collar-pass-rate";
    row.value = eligible == 0 ? kNone : static_cast<double>(passed) / eligible;
    row.flag = passed == eligible ? "all-pass" : "failures";
    out_.rows.push_back(row);
    if (passed != eligible) issue("collar: " + std::to_string(eligible - passed) + " eligible trials failed");
    for (const auto& t : trials) {
      if (!t.result) continue;
      auto outline = [](const JordanCurve& c, const std::string& label) {
        PlotSeries s{label, {}, {}};
        for (const Point2& p : c.vertices()) s.x.push_back(p.x), s.y.push_back(p.y);
        return s;
      };
      plots_.push_back({"collar extension, trial " + std::to_string(t.index), "x", "y",
                        {outline(*t.polygon, "polygon"), outline(t.result->curve, "collar")}});
      plot_names_.push_back("collar.svg");
      break;
    }
    return json{{"seed", config_.seed}, {"eligible", eligible}, {"passed", passed}, {"trials", list}};
  });
}

void Runner::run_window_ops(std::size_t index, const d::ArcWindow& w) {
  const int wi = static_cast<int>(index);
  const auto grid = config_.grid.resolve();
  const std::string tag = window_tag(w);
  auto has = [&](const char* op) {
    return std::find(config_.operations.begin(), config_.operations.end(), op) != config_.operations.end();
  };
  if (has("radial-mean")) {
    operation("radial-mean", wi, [&] {
      const auto p = d::radial_mean_profile(engine_, w, grid);
      d::append_rows(out_.rows, ctx_, w, p);
      profiles_.series.push_back(profile_series(p, "radial-mean " + tag));
      return d::to_json(p);
    });
  }
  if (has("l1-profile")) {
    operation("l1-profile", wi, [&] {
      const auto p = d::l1_limit_profile(engine_, w, grid);
      d::append_rows(out_.rows, ctx_, p);
      defects_.series.push_back(defect_series(p.defects, "cauchy-defect " + tag));
      return d::to_json(p);
    });
  }
  if (has("image-length")) {
    for (double r : config_.image_radii) {
      operation("image-length", wi, [&] {
        const auto il = d::image_curve_length(engine_, w, r);
        d::append_rows(out_.rows, ctx_, w, il);
        return d::to_json(il);
      });
    }
  }
  if (has("boundary-length")) {
    operation("boundary-length", wi, [&] {
      const auto report = d::boundary_arc_length(engine_, w, config_.schedule);
      d::append_rows(out_.rows, ctx_, w, report);
      return d::to_json(report);
    });
  }
  if (has("liminf")) {
    operation("liminf", wi, [&] {
      const auto report = d::liminf_check(engine_, w, grid, {.schedule = config_.schedule});
      d::append_rows(out_.rows, ctx_, report);
      return d::to_json(report);
    });
  }
  if (has("equivalence")) {
    if (w.b - w.a >= 2.0 * std::numbers::pi) {
      operations_.push_back({{"operation", "equivalence"}, {"window", wi}, {"skipped", "full circle"}});
    } else {
      operation("equivalence", wi, [&] {
        const auto report = d::equivalence_suite(engine_, w, {.grid = grid, .schedule = config_.schedule});
        d::append_rows(out_.rows, ctx_, report);
        profiles_.series.push_back(profile_series(report.radial, "radial-mean " + tag));
        images_.series.push_back(profile_series(report.images, "image-length " + tag));
        if (!report.consistent) issue("equivalence inconsistent on " + tag);
        return d::to_json(report);
      });
    }
  }
  if (has("monotonicity") && !w.is_full_circle()) {
    operation("monotonicity", wi, [&] {
      const auto report = d::monotonicity_scan(engine_, w, dense_r_grid(config_.monotonicity_radii));
      d::append_rows(out_.rows, ctx_, report);
      return d::to_json(report);
    });
  }
}

void Runner::run_global_ops() {
  auto has = [&](const char* op) {
    return std::find(config_.operations.begin(), config_.operations.end(), op) != config_.operations.end();
  };
  if (has("monotonicity")) {
    operation("monotonicity", -1, [&] {
      const auto report =
          d::monotonicity_scan(engine_, d::ArcWindow::full_circle(), dense_r_grid(config_.monotonicity_radii));
      d::append_rows(out_.rows, ctx_, report);
      monotone_.series.push_back(profile_series(report.profile, "radial-mean full circle"));
      if (!report.monotone) issue("full-circle radial mean decreases");
      return d::to_json(report);
    });
  }
  if (has("nt-limit")) {
    std::vector<double> angles = config_.nt_angles;
    if (config_.nt_singular_angles)
      for (double t : engine_->singular_angles()) angles.push_back(t);
    for (double t : angles) {
      operation("nt-limit", -1, [&] {
        const auto report = d::estimate_nontangential_limit(engine_, t, d::default_stolz());
        d::append_rows(out_.rows, ctx_, report);
        return d::to_json(report);
      });
    }
  }
}

void Runner::run() {
  const auto start = std::chrono::steady_clock::now();
  auto& m = out_.manifest;
  m["tool"] = "arcmap";
  m["version"] = version();
  m["config"] = to_json(config_);
  ctx_ = {config_.experiment, config_.domain.label(), "none"};

  auto has = [&](const char* op) {
    return std::find(config_.operations.begin(), config_.operations.end(), op) != config_.operations.end();
  };
  if (has("ladder")) run_ladder();
  if (has("collar")) run_collar();

  try {
    const auto curve = build_domain(config_.domain);
    m["domain"] = curve ? curve_summary(*curve) : json{{"name", "disk"}};
    const std::string kind = resolve_engine_kind(config_.domain, curve, config_.engine);
    if (kind != "none") {
      const auto build_start = std::chrono::steady_clock::now();
      engine_ = build_engine(config_.domain, curve, config_.engine);
      ctx_.engine = engine_->name();
      m["engine"] = engine_summary(engine_, seconds_since(build_start));
      auto row = base_row(ctx_);
      row.quantity = "engine-boundary-residual";
      row.value = engine_->boundary_residual();
      std::string flags;
      for (const auto& f : engine_->flags()) flags += (flags.empty() ? "" : ";") + f;
      row.flag = flags.empty() ? "ok" : flags;
      out_.rows.push_back(row);
      for (const auto& f : engine_->flags()) issue("engine flag " + f);
      json windows = json::array();
      for (const auto& spec : config_.windows) {
        windows_.push_back(resolve_window(engine_, spec));
        windows.push_back({{"a", windows_.back().a}, {"b", windows_.back().b}});
      }
      m["windows"] = windows;
    }
  } catch (const Error& e) {
    out_.error_kind = e.kind();
    out_.error = e.what();
    m["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    auto row = base_row(ctx_);
    row.quantity = "engine-build";
    row.flag = std::string(to_string(e.kind()));
    out_.rows.push_back(row);
  }

  if (engine_ && !out_.error_kind) {
    for (std::size_t i = 0; i < windows_.size(); ++i) run_window_ops(i, windows_[i]);
    run_global_ops();
  }

  for (Plot* p : {&profiles_, &images_, &defects_, &monotone_}) {
    if (p->series.empty()) continue;
    plots_.push_back(*p);
    plot_names_.push_back(p == &profiles_ ? "profiles.svg"
                          : p == &images_ ? "image-lengths.svg"
                          : p == &defects_ ? "defects.svg"
                                           : "monotonicity.svg");
  }

  json rows = json::array();
  for (const auto& row : out_.rows) rows.push_back(d::to_json(row));
  m["operations"] = operations_;
  m["rows"] = rows;
  m["issues"] = out_.issues;
  out_.exit_code = out_.error_kind ? 1 : (out_.issues.empty() ? 0 : 2);
  m["exit_code"] = out_.exit_code;
  m["plots"] = plot_names_;
  if (write_files_) write_outputs();
  m["timings"] = {{"total_seconds", seconds_since(start)}};
  if (write_files_) {
    const std::filesystem::path manifest = std::filesystem::path(config_.output_dir) / "manifest.json";
    write_file_atomic(manifest, m.dump(2) + "\n");
    out_.files.push_back(manifest);
  }
}

// Serialized emission: CSV, then plots; the manifest goes last.
void Runner::write_outputs() {
  const std::filesystem::path dir = config_.output_dir;
  const auto csv = dir / "results.csv";
  write_file_atomic(csv, csv_document(out_.rows));
  out_.files.push_back(csv);
  for (std::size_t i = 0; i < plots_.size(); ++i) {
    const auto path = dir / plot_names_[i];
    emit_plot(plots_[i], path);
    out_.files.push_back(path);
  }
  json files = json::array();
  for (const auto& f : out_.files) files.push_back(f.filename().string());
  files.push_back("manifest.json");
  out_.manifest["files"] = files;
}

}  // namespace

std::string version() { return ARCMAP_VERSION; }

bool is_issue_flag(const std::string& flag) {
  return flag == "accuracy-not-reached" || flag == "inconsistent" || flag == "violated";
}

std::optional<JordanCurve> build_domain(const DomainSpec& spec) {
  if (!spec.vertex_file.empty()) return geometry::load_curve(spec.vertex_file);
  const auto& b = spec.builtin;
  if (b == "disk") return std::nullopt;
  if (b == "square") return JordanCurve::square(spec.parameter("side", 1.0));
  if (b == "rectangle") return JordanCurve::rectangle(spec.parameter("width", 2.0), spec.parameter("height", 1.0));
  if (b == "regular-polygon") {
    const double sides = spec.parameter("sides", 5.0);
    require(sides == std::floor(sides) && sides >= 3.0 && sides <= 1e6, "domain: sides must be an integer >= 3");
    return JordanCurve::regular_polygon(static_cast<int>(sides), spec.parameter("radius", 1.0));
  }
  if (b == "ellipse") {
    const double samples = spec.parameter("samples", 512.0);
    require(samples == std::floor(samples) && samples >= 8.0 && samples <= 1e7,
            "domain: samples must be an integer >= 8");
    return JordanCurve::ellipse(spec.parameter("a", 2.0), spec.parameter("b", 1.0), static_cast<int>(samples));
  }
  if (b == "candidate") {
    const double per = spec.parameter("samples_per_oscillation", 16.0);
    require(per == std::floor(per) && per >= 2.0 && per <= 1e4,
            "domain: samples_per_oscillation must be an integer >= 2");
    return geometry::candidate_domain_boundary(spec.parameter("epsilon", 1e-3),
                                               {.samples_per_oscillation = static_cast<int>(per)});
  }
  fail(ErrorKind::kInvalidInput, "domain: unknown builtin '" + b + "'");
}

std::string resolve_engine_kind(const DomainSpec& domain, const std::optional<JordanCurve>& curve,
                                const EngineSpec& spec) {
  if (spec.kind != "auto") {
    if (spec.kind == "closed-form") require(!curve, "engine: closed-form engines need the disk domain");
    if (spec.kind == "sc" || spec.kind == "zipper") require(curve.has_value(), "engine: the disk needs closed-form");
    return spec.kind;
  }
  if (!curve) return "closed-form";
  if (is_polygon_builtin(domain.builtin)) return "sc";
  if (!domain.vertex_file.empty() && curve->segment_count() <= 32) return "sc";
  return "zipper";
}

cplx default_w0(const JordanCurve& curve) {
  const auto v = curve.vertices();
  double area = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double c = geometry::cross(v[i], v[i + 1]);
    area += c;
    cx += (v[i].x + v[i + 1].x) * c;
    cy += (v[i].y + v[i + 1].y) * c;
  }
  require(area != 0.0, "engine: degenerate domain");
  const Point2 centroid{cx / (3.0 * area), cy / (3.0 * area)};
  require(geometry::point_in_jordan(curve, centroid) == geometry::Location::kInside,
          "engine: the centroid lies outside the domain; set engine.w0");
  return centroid.as_complex();
}

Engine build_engine(const DomainSpec& domain, const std::optional<JordanCurve>& curve, const EngineSpec& spec) {
  const std::string kind = resolve_engine_kind(domain, curve, spec);
  require(kind != "none", "engine: kind none builds no engine");
  if (kind == "closed-form") return conformal::build_closed_form(spec.closed_form);
  const cplx w0 = spec.w0 ? *spec.w0 : default_w0(*curve);
  if (kind == "sc") {
    conformal::ScOptions options;
    options.nodes = spec.sc_nodes;
    return conformal::build_schwarz_christoffel(*curve, w0, options);
  }
  const conformal::ZipperOptions options{
      .min_samples = spec.zipper.min_samples, .start = spec.zipper.start, .crowding = spec.zipper.crowding};
  if (spec.zipper.max_spacing > 0.0) {
    const auto points = geometry::resample_polyline(curve->vertices(), spec.zipper.max_spacing);
    return conformal::build_zipper(points, w0, options);
  }
  return conformal::build_zipper(*curve, w0, options);
}

d::ArcWindow resolve_window(const Engine& engine, const WindowSpec& spec) {
  switch (spec.kind) {
    case WindowSpec::Kind::kFull: return d::ArcWindow::full_circle();
    case WindowSpec::Kind::kAngles: {
      const d::ArcWindow w{spec.a, spec.b};
      w.validate();
      return w;
    }
    case WindowSpec::Kind::kPoints: break;
  }
  const double a = engine->invert_boundary(spec.from);
  double b = engine->invert_boundary(spec.to);
  if (b <= a) b += 2.0 * std::numbers::pi;
  const d::ArcWindow w{a, b};
  w.validate();
  return w;
}

std::vector<double> dense_r_grid(int count) {
  require(count >= 2, "dense_r_grid: need at least two radii");
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) grid.push_back(1.0 - std::exp2(-(1.0 + 13.0 * i / (count - 1))));
  return grid;
}

std::vector<Point2> random_star_polygon(std::mt19937_64& rng, int vertices, double r_min) {
  require(vertices >= 3, "random_star_polygon: need three vertices");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point2> pts;
  for (int k = 0; k < vertices; ++k) {
    const double angle = 2.0 * std::numbers::pi * (k + 0.1 + 0.8 * unit(rng)) / vertices;
    const double r = r_min + (1.0 - r_min) * unit(rng);
    pts.emplace_back(r * std::cos(angle), r * std::sin(angle));
  }
  pts.push_back(pts.front());
  return pts;
}

int collar_violations(const JordanCurve& original, geometry::SubArc subarc, const geometry::CollarResult& result) {
  int bad = 0;
  const auto v = result.curve.vertices();
  if (!geometry::is_simple(v)) ++bad;
  for (const Point2& p : result.connector)
    if (geometry::point_in_jordan(original, p) != geometry::Location::kInside) ++bad;

  std::vector<Point2> arc{original.at(subarc.t_start)};
  for (double k = std::floor(subarc.t_start) + 1.0; k < subarc.t_end; k += 1.0) arc.push_back(original.at(k));
  arc.push_back(original.at(subarc.t_end));
  double last = -1.0;
  for (const Point2& p : arc) {
    double best = INFINITY, where = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      double frac = 0.0;
      const double dist = geometry::distance(p, geometry::closest_point_on_segment(p, v[i], v[i + 1], &frac));
      if (dist < best) best = dist, where = static_cast<double>(i) + frac;
    }
    if (best > 1e-12 || where < last) ++bad;
    last = where;
  }
  return bad;
}

std::vector<CollarTrial> collar_trials(std::uint64_t seed, const CollarSpec& spec) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<CollarTrial> trials;
  for (int i = 0; i < spec.polygons; ++i) {
    CollarTrial t;
    t.index = i;
    const auto polygon = JordanCurve::from_polyline(random_star_polygon(rng, spec.vertices));
    const double n = static_cast<double>(polygon.segment_count());
    t.vertices = polygon.segment_count();
    t.subarc.t_start = n * unit(rng);
    t.subarc.t_end = t.subarc.t_start + 0.1 + (n - 0.2) * unit(rng);
    try {
      auto result = geometry::collar_extend(polygon, t.subarc, spec.margin);
      t.violations = collar_violations(polygon, t.subarc, result);
      t.status = t.violations == 0 ? "ok" : "violation";
      t.perimeter = result.curve.perimeter();
      t.result = std::move(result);
      t.polygon = polygon;
    } catch (const Error& e) {
      t.status = e.kind() == ErrorKind::kInvalidInput ? "precondition" : "resolution";
    }
    trials.push_back(std::move(t));
  }
  return trials;
}

RunResult run_experiment(const ExperimentConfig& config, bool write_files) {
  RunResult out;
  Runner(config, out, write_files).run();
  return out;
}

}  // namespace arcmap::harness
