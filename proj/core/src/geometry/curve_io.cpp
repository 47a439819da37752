#include "arcmap/geometry/curve_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "arcmap/error.hpp"
#include "arcmap/format.hpp"

namespace arcmap::geometry {
namespace {

double parse_number(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    fail(ErrorKind::kInvalidInput, "vertex list line " + std::to_string(line) + ": bad number '" +
                                       std::string(token) + "'");
  return value;
}

std::string_view kind_name(JordanCurve::Kind kind) {
  switch (kind) {
    case JordanCurve::Kind::kPolyline: return "polyline";
    case JordanCurve::Kind::kPiecewiseAnalytic: return "piecewise-analytic";
    case JordanCurve::Kind::kBuiltin: return "builtin";
  }
  return "polyline";
}

}  // namespace

std::vector<Point2> read_vertex_text(std::istream& in) {
  std::vector<Point2> pts;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string xs, ys, extra;
    if (!(fields >> xs) || xs[0] == '#') continue;
    if (!(fields >> ys) || (fields >> extra))
      fail(ErrorKind::kInvalidInput, "vertex list line " + std::to_string(number) + ": expected 'x y'");
    pts.emplace_back(parse_number(xs, number), parse_number(ys, number));
  }
  return pts;
}

void write_vertex_text(std::ostream& out, const JordanCurve& curve) {
  for (const Point2& p : curve.vertices()) out << format_double(p.x) << ' ' << format_double(p.y) << '\n';
}

nlohmann::json curve_to_json(const JordanCurve& curve) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Point2& p : curve.vertices()) vertices.push_back({p.x, p.y});
  return {{"kind", kind_name(curve.kind())},
          {"name", curve.name()},
          {"parameters", curve.parameters()},
          {"vertices", std::move(vertices)},
          {"orientation", "positive"}};
}

JordanCurve curve_from_json(const nlohmann::json& j) {
  require(j.is_object(), "curve JSON: expected an object");
  for (const auto& [key, value] : j.items()) {
    require(key == "kind" || key == "name" || key == "parameters" || key == "vertices" || key == "orientation",
            "curve JSON: unknown key '" + key + "'");
  }
  require(j.contains("vertices") && j["vertices"].is_array(), "curve JSON: missing vertex array");
  std::vector<Point2> pts;
  for (const auto& v : j["vertices"]) {
    require(v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number(),
            "curve JSON: each vertex must be [x, y]");
    pts.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  const std::string orientation = j.value("orientation", std::string("positive"));
  require(orientation == "positive" || orientation == "negative", "curve JSON: orientation must be positive|negative");
  JordanCurve curve = JordanCurve::from_polyline(std::move(pts));
  require(curve.reversed_on_input() == (orientation == "negative"),
          "curve JSON: orientation flag disagrees with the vertex order");

  const std::string kind = j.value("kind", std::string("polyline"));
  const std::string name = j.value("name", std::string("polyline"));
  std::map<std::string, double> params;
  if (j.contains("parameters")) params = j["parameters"].get<std::map<std::string, double>>();
  if (kind == "piecewise-analytic" && name == "ellipse") {
    JordanCurve rebuilt = JordanCurve::ellipse(params.at("a"), params.at("b"), static_cast<int>(params.at("samples")));
    if (std::equal(rebuilt.vertices().begin(), rebuilt.vertices().end(), curve.vertices().begin(),
                   curve.vertices().end()))
      return rebuilt;
  }
  const JordanCurve::Kind k = kind == "builtin"              ? JordanCurve::Kind::kBuiltin
                              : kind == "piecewise-analytic" ? JordanCurve::Kind::kPiecewiseAnalytic
                                                             : JordanCurve::Kind::kPolyline;
  return curve.with_identity(k, name, std::move(params));
}

JordanCurve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIoError, "cannot open curve file " + path.string());
  if (path.extension() == ".json") {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::kInvalidInput, "curve JSON: " + std::string(e.what()));
    }
    return curve_from_json(j);
  }
  return JordanCurve::from_polyline(read_vertex_text(in));
}

}  // namespace arcmap::geometry
