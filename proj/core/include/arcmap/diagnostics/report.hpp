#pragma once

#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arcmap/diagnostics/equivalence.hpp"
#include "arcmap/diagnostics/lengths.hpp"
#include "arcmap/diagnostics/limits.hpp"

namespace arcmap::diagnostics {

using nlohmann::json;

json to_json(const ArcWindow& w);
json to_json(const Estimate& e);
json to_json(const RadialProfile& p);
json to_json(const DefectGrid& g);
json to_json(const geometry::LengthReport& r);
json to_json(const ImageLength& r);
json to_json(const LiminfReport& r);
json to_json(const L1Profile& r);
json to_json(const NontangentialLimit& r);
json to_json(const MonotonicityReport& r);
json to_json(const EquivalenceReport& r);

/// One flat CSV record. NaN fields are written empty.
struct CsvRow {
  static constexpr double kNone = std::numeric_limits<double>::quiet_NaN();
  std::string experiment;
  std::string domain;
  std::string engine;
  double a = kNone;
  double b = kNone;
  double r = kNone;
  double r2 = kNone;
  std::string quantity;
  double value = kNone;
  double tolerance = kNone;
  std::string flag;
};

struct RowContext {
  std::string experiment;
  std::string domain;
  std::string engine;
};

std::string csv_header();
std::string csv_line(const CsvRow& row);
json to_json(const CsvRow& row);

std::string estimate_flag(const Estimate& e);

void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const ArcWindow& w, const RadialProfile& p);
void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const ArcWindow& w, const DefectGrid& g);
void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const ArcWindow& w, const geometry::LengthReport& r);
void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const ArcWindow& w, const ImageLength& r);
void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const LiminfReport& r);
void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const L1Profile& r);
void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const NontangentialLimit& r);
void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const MonotonicityReport& r);
void append_rows(std::vector<CsvRow>& rows, const RowContext& ctx, const EquivalenceReport& r);

}  // namespace arcmap::diagnostics
