#include "arcmap/harness/emit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "arcmap/error.hpp"

namespace arcmap::harness {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double to_unit(const AxisScale& s, double v) {
  if (s.log) return (std::log10(v) - std::log10(s.lo)) / (std::log10(s.hi) - std::log10(s.lo));
  return (v - s.lo) / (s.hi - s.lo);
}

std::vector<double> ticks(const AxisScale& s) {
  std::vector<double> out;
  if (s.log) {
    for (int e = static_cast<int>(std::ceil(std::log10(s.lo) - 1e-9)); e <= std::floor(std::log10(s.hi) + 1e-9); ++e)
      out.push_back(std::pow(10.0, e));
    return out;
  }
  const double raw = (s.hi - s.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  for (double v = std::ceil(s.lo / step - 1e-9) * step; v <= s.hi + 1e-9 * step; v += step)
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return out;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) fail(ErrorKind::kIoError, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  auto tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::kIoError, "cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) fail(ErrorKind::kIoError, "write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail(ErrorKind::kIoError, "cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

std::string csv_document(const std::vector<diagnostics::CsvRow>& rows) {
  std::string out = diagnostics::csv_header() + "\n";
  for (const auto& row : rows) out += diagnostics::csv_line(row) + "\n";
  return out;
}

AxisScale choose_scale(const std::vector<double>& values) {
  double lo = INFINITY, hi = -INFINITY;
  for (double v : values)
    if (std::isfinite(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  require(std::isfinite(lo), "plot: no finite values");
  if (lo > 0.0 && hi / lo > 100.0) {
    return {std::pow(10.0, std::floor(std::log10(lo))), std::pow(10.0, std::ceil(std::log10(hi))), true};
  }
  if (hi == lo) {
    const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
    return {lo - pad, hi + pad, false};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad, false};
}

std::string render_svg(const Plot& plot) {
  std::vector<double> xs, ys;
  for (const auto& s : plot.series) {
    require(s.x.size() == s.y.size(), "plot: series '" + s.label + "' has mismatched coordinates");
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) xs.push_back(s.x[i]), ys.push_back(s.y[i]);
  }
  require(!xs.empty(), "plot: empty series");
  const AxisScale sx = choose_scale(xs);
  const AxisScale sy = choose_scale(ys);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + pw * to_unit(sx, v); };
  auto py = [&](double v) { return kTop + ph * (1.0 - to_unit(sy, v)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(plot.title) << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(sx)) {
    const double x = px(t);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(x) << "\" y2=\""
        << num(kTop + ph + 5) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(sy)) {
    const double y = py(t);
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(y) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick_label(t)
        << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 16) << "\" text-anchor=\"middle\">"
      << escape(plot.x_label) << (sx.log ? " (log)" : "") << "</text>\n";
  svg << "<text transform=\"translate(18," << num(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(plot.y_label) << (sy.log ? " (log)" : "") << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kColors[k % kColors.size()];
    std::ostringstream points;
    std::size_t count = 0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if ((sx.log && s.x[i] <= 0.0) || (sy.log && s.y[i] <= 0.0)) continue;
      points << (count++ ? " " : "") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
    }
    svg << "<g class=\"series\" data-label=\"" << escape(s.label) << "\">";
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << points.str()
        << "\"/></g>\n";
    const double ly = kTop + 16.0 * static_cast<double>(k) + 8.0;
    svg << "<line x1=\"" << num(kLeft + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kLeft + pw + 32)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << num(kLeft + pw + 36) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const Plot& plot, const std::filesystem::path& path) { write_file_atomic(path, render_svg(plot)); }

PlotSeries profile_series(const diagnostics::RadialProfile& profile, const std::string& label) {
  PlotSeries s{label, {}, {}};
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    s.x.push_back(1.0 - profile.r[i]);
    s.y.push_back(profile.values[i].value);
  }
  return s;
}

PlotSeries defect_series(const diagnostics::DefectGrid& defects, const std::string& label) {
  PlotSeries s{label, {}, {}};
  for (std::size_t i = 0; i < defects.r1.size(); ++i) {
    s.x.push_back(1.0 - defects.r1[i]);
    s.y.push_back(defects.values[i].value);
  }
  return s;
}

PlotSeries ladder_series(const geometry::PartitionLadder& ladder, const std::string& label) {
  PlotSeries s{label, {}, {}};
  for (const auto& level : ladder.levels) {
    s.x.push_back(static_cast<double>(level.segments));
    s.y.push_back(level.sum);
  }
  return s;
}

}  // namespace arcmap::harness
