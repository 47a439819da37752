#include "arcmap/diagnostics/report.hpp"

#include <cmath>

#include "arcmap/format.hpp"

namespace arcmap::diagnostics {

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json estimates(const std::vector<Estimate>& v) {
  json out = json::array();
  for (const Estimate& e : v) out.push_back(to_json(e));
  return out;
}

std::string csv_field(double v) { return std::isnan(v) ? std::string() : format_double(v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

CsvRow base(const RowContext& ctx, const ArcWindow& w) {
  CsvRow row;
  row.experiment = ctx.experiment;
  row.domain = ctx.domain;
  row.engine = ctx.engine;
  row.a = w.a;
  row.b = w.b;
  return row;
}

}  // namespace

json to_json(const ArcWindow& w) { return {{"a", w.a}, {"b", w.b}}; }

json to_json(const Estimate& e) {
  return {{"value", number(e.value)}, {"tolerance", number(e.tolerance)}, {"converged", e.converged}};
}

json to_json(const RadialProfile& p) {
  return {{"quantity", to_string(p.quantity)}, {"r", p.r}, {"values", estimates(p.values)}};
}

json to_json(const DefectGrid& g) { return {{"r1", g.r1}, {"r2", g.r2}, {"values", estimates(g.values)}}; }

json to_json(const geometry::LengthReport& r) {
  json levels = json::array();
  for (const auto& l : r.ladder.levels) levels.push_back({{"level", l.level}, {"segments", l.segments}, {"sum", l.sum}});
  return {{"verdict", geometry::to_string(r.verdict)},
          {"length", number(r.length)},
          {"budget", number(r.budget)},
          {"last_relative_change", number(r.last_relative_change)},
          {"refinement", r.ladder.refinement},
          {"levels", levels}};
}

json to_json(const ImageLength& r) {
  return {{"r", r.r},
          {"length", to_json(r.length)},
          {"chord_sum", number(r.chord_sum)},
          {"points", r.points},
          {"integral", to_json(r.integral)},
          {"consistent", r.consistent}};
}

json to_json(const LiminfReport& r) {
  json images = json::array();
  for (const auto& i : r.images) images.push_back(to_json(i));
  return {{"window", to_json(r.window)},
          {"boundary", to_json(r.boundary)},
          {"images", images},
          {"liminf", {{"value", number(r.liminf.value)},
                      {"tail_min", number(r.liminf.tail_min)},
                      {"tail_max", number(r.liminf.tail_max)},
                      {"method", r.liminf.method}}},
          {"margin", number(r.margin)},
          {"tolerance", number(r.tolerance)},
          {"holds", r.holds}};
}

json to_json(const L1Profile& r) {
  return {{"window", to_json(r.window)},   {"defects", to_json(r.defects)},
          {"final_mean", to_json(r.final_mean)}, {"threshold", number(r.threshold)},
          {"decreasing", r.decreasing},    {"cauchy", r.cauchy}};
}

json to_json(const NontangentialLimit& r) {
  auto ray = [](const std::vector<cplx>& v) {
    json out = json::array();
    for (cplx z : v) out.push_back({number(z.real()), number(z.imag())});
    return out;
  };
  return {{"t", r.t},
          {"opening", r.stolz.opening},
          {"radii", r.stolz.radii},
          {"central", ray(r.central)},
          {"left", ray(r.left)},
          {"right", ray(r.right)},
          {"estimate", {number(r.estimate.real()), number(r.estimate.imag())}},
          {"spread", number(r.spread)},
          {"rel_tol", r.rel_tol},
          {"converged", r.converged}};
}

json to_json(const MonotonicityReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"r1", v.r1}, {"r2", v.r2}, {"v1", v.v1}, {"v2", v.v2}});
  return {{"window", to_json(r.window)},
          {"profile", to_json(r.profile)},
          {"violations", violations},
          {"verdict", r.monotone ? "monotone-nondecreasing" : "violations"}};
}

json to_json(const EquivalenceReport& r) {
  return {{"window", to_json(r.window)},
          {"rectifiable", to_string(r.rectifiable)},
          {"radial_mean", to_string(r.radial_mean)},
          {"image_lengths", to_string(r.image_lengths)},
          {"consistent", r.consistent},
          {"boundary", to_json(r.boundary)},
          {"radial", to_json(r.radial)},
          {"images", to_json(r.images)},
          {"flags", r.flags}};
}

std::string csv_header() { return "experiment,domain,engine,a,b,r,r2,quantity,value,tolerance,flag"; }

std::string csv_line(const CsvRow& row) {
  std::string out;
  out += csv_field(row.experiment) + ',' + csv_field(row.domain) + ',' + csv_field(row.engine) + ',';
  out += csv_field(row.a) + ',' + csv_field(row.b) + ',' + csv_field(row.r) + ',' + csv_field(row.r2) + ',';
  out += csv_field(row.quantity) + ',' + csv_field(row.value) + ',' + csv_field(row.tolerance) + ',';
  out += csv_field(row.flag);
  return out;
}

json to_json(const CsvRow& row) {
  return {{"experiment", row.experiment}, {"domain", row.domain}, {"engine", row.engine},
          {"a", number(row.a)},           {"b", number(row.b)},     {"r", number(row.r)},
          {"r2", number(row.r2)},         {"quantity", row.quantity}, {"value", number(row.value)},
          {"tolerance", number(row.tolerance)}, {"flag", row.flag}};
}

std::string estimate_flag(const Estimate& e) { return e.converged ? "ok" : "accuracy-not-reached"; }

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const ArcWindow& w, const RadialProfile& p) {
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    CsvRow row = base(ctx, w);
    row.r = p.r[i];
    row.quantity = to_string(p.quantity);
    row.value = p.values[i].value;
    row.tolerance = p.values[i].tolerance;
    row.flag = estimate_flag(p.values[i]);
    rows.push_back(std::move(row));
  }
}

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const ArcWindow& w, const DefectGrid& g) {
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    CsvRow row = base(ctx, w);
    row.r = g.r1[i];
    row.r2 = g.r2[i];
    row.quantity = "cauchy-defect";
    row.value = g.values[i].value;
    row.tolerance = g.values[i].tolerance;
    row.flag = estimate_flag(g.values[i]);
    rows.push_back(std::move(row));
  }
}

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const ArcWindow& w,
                 const geometry::LengthReport& r) {
  CsvRow row = base(ctx, w);
  row.quantity = "boundary-length";
  row.value = r.length;
  row.tolerance = r.last_relative_change * r.length;
  row.flag = geometry::to_string(r.verdict);
  rows.push_back(std::move(row));
}

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const ArcWindow& w, const ImageLength& r) {
  CsvRow row = base(ctx, w);
  row.r = r.r;
  row.quantity = "image-length";
  row.value = r.length.value;
  row.tolerance = r.length.tolerance;
  row.flag = estimate_flag(r.length);
  rows.push_back(row);
  row.quantity = "image-length-integral";
  row.value = r.integral.value;
  row.tolerance = r.integral.tolerance;
  row.flag = r.consistent ? "consistent" : "inconsistent";
  rows.push_back(std::move(row));
}

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const LiminfReport& r) {
  append_rows(rows, ctx, r.window, r.boundary);
  for (const auto& i : r.images) append_rows(rows, ctx, r.window, i);
  CsvRow row = base(ctx, r.window);
  row.quantity = "liminf-image-length";
  row.value = r.liminf.value;
  row.tolerance = r.tolerance;
  row.flag = r.liminf.method;
  rows.push_back(row);
  row.quantity = "liminf-margin";
  row.value = r.margin;
  row.flag = r.holds ? "holds" : "violated";
  rows.push_back(std::move(row));
}

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const L1Profile& r) {
  append_rows(rows, ctx, r.window, r.defects);
  CsvRow row = base(ctx, r.window);
  row.r = r.defects.r2.back();
  row.quantity = "cauchy-threshold";
  row.value = r.threshold;
  row.tolerance = 1e-3 * r.final_mean.tolerance;
  row.flag = r.cauchy ? "cauchy" : (r.decreasing ? "above-threshold" : "not-decreasing");
  rows.push_back(std::move(row));
}

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const NontangentialLimit& r) {
  CsvRow row = base(ctx, {r.t, r.t});
  row.r = r.stolz.radii.back();
  row.tolerance = r.rel_tol * std::abs(r.estimate);
  row.flag = r.converged ? "converged" : "not-converged";
  row.quantity = "nt-limit-re";
  row.value = r.estimate.real();
  rows.push_back(row);
  row.quantity = "nt-limit-im";
  row.value = r.estimate.imag();
  rows.push_back(row);
  row.quantity = "nt-spread";
  row.value = r.spread;
  rows.push_back(std::move(row));
}

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const MonotonicityReport& r) {
  append_rows(rows, ctx, r.window, r.profile);
  CsvRow row = base(ctx, r.window);
  row.quantity = "monotonicity-violations";
  row.value = static_cast<double>(r.violations.size());
  row.tolerance = 0.0;
  row.flag = r.monotone ? "monotone-nondecreasing" : "violations";
  rows.push_back(std::move(row));
}

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const EquivalenceReport& r) {
  append_rows(rows, ctx, r.window, r.boundary);
  append_rows(rows, ctx, r.window, r.radial);
  append_rows(rows, ctx, r.window, r.images);
  auto verdict_row = [&](const std::string& q, const RadialProfile* p, double value, Verdict v) {
    CsvRow row = base(ctx, r.window);
    row.quantity = q;
    row.value = value;
    row.tolerance = p ? p->values.back().tolerance : r.boundary.last_relative_change * r.boundary.length;
    row.flag = to_string(v);
    rows.push_back(std::move(row));
  };
  verdict_row("verdict-rectifiable", nullptr, r.boundary.length, r.rectifiable);
  verdict_row("verdict-radial-mean", &r.radial, r.radial.values.back().value, r.radial_mean);
  verdict_row("verdict-image-length", &r.images, r.images.values.back().value, r.image_lengths);
  CsvRow row = base(ctx, r.window);
  row.quantity = "equivalence-consistent";
  row.value = r.consistent ? 1.0 : 0.0;
  row.tolerance = 0.0;
  row.flag = r.consistent ? "consistent" : "inconsistent";
  rows.push_back(std::move(row));
}

}  // namespace arcmap::diagnostics
