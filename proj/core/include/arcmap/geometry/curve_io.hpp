#pragma once

#include <filesystem>
#include <iosfwd>

#include <nlohmann/json.hpp>

#include "arcmap/geometry/jordan_curve.hpp"

namespace arcmap::geometry {

/// Plain-text vertex list: one "x y" pair per line, closing vertex repeated.
/// Blank lines and lines starting with '#' are skipped.
std::vector<Point2> read_vertex_text(std::istream& in);
void write_vertex_text(std::ostream& out, const JordanCurve& curve);

/// {"kind", "name", "parameters", "vertices": [[x, y], ...], "orientation"}.
nlohmann::json curve_to_json(const JordanCurve& curve);
JordanCurve curve_from_json(const nlohmann::json& j);

/// Dispatches on the extension: ".json" reads the JSON form, anything else the
/// plain-text vertex list.
JordanCurve load_curve(const std::filesystem::path& path);

}  // namespace arcmap::geometry
