#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arcmap/diagnostics/report.hpp"
#include "arcmap/geometry/arc_length.hpp"

namespace arcmap::harness {

/// Writes through a temporary sibling and renames it over `path`.
/// kIoError when the directory or file cannot be written.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string csv_document(const std::vector<diagnostics::CsvRow>& rows);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

struct AxisScale {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;
};

/// Log scale when every finite value is positive and max / min exceeds 100.
AxisScale choose_scale(const std::vector<double>& values);

/// Self-contained SVG document. kInvalidInput when no series has a finite point.
std::string render_svg(const Plot& plot);
void emit_plot(const Plot& plot, const std::filesystem::path& path);

/// Values against the depth 1 - r.
PlotSeries profile_series(const diagnostics::RadialProfile& profile, const std::string& label);
PlotSeries defect_series(const diagnostics::DefectGrid& defects, const std::string& label);
/// Partition sums against the segment count N.
PlotSeries ladder_series(const geometry::PartitionLadder& ladder, const std::string& label);

}  // namespace arcmap::harness
