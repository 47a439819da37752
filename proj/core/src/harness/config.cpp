#include "arcmap/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "arcmap/error.hpp"
#include "arcmap/format.hpp"

namespace arcmap::harness {

namespace {

constexpr double kPi = std::numbers::pi;

const std::map<std::string, std::map<std::string, double>>& builtin_parameters() {
  static const std::map<std::string, std::map<std::string, double>> table = {
      {"disk", {}},
      {"square", {{"side", 1.0}}},
      {"rectangle", {{"width", 2.0}, {"height", 1.0}}},
      {"regular-polygon", {{"sides", 5.0}, {"radius", 1.0}}},
      {"ellipse", {{"a", 2.0}, {"b", 1.0}, {"samples", 512.0}}},
      {"candidate", {{"epsilon", 1e-3}, {"samples_per_oscillation", 16.0}}},
  };
  return table;
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  require(j.is_object(), "config: " + where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    require(known, "config: unknown key '" + key + "' in " + where);
  }
}

double get_number(const json& j, const std::string& what) {
  require(j.is_number(), "config: " + what + " must be a number");
  const double v = j.get<double>();
  require(std::isfinite(v), "config: " + what + " must be finite");
  return v;
}

int get_int(const json& j, const std::string& what) {
  require(j.is_number_integer(), "config: " + what + " must be an integer");
  return j.get<int>();
}

std::uint64_t get_count(const json& j, const std::string& what) {
  require(j.is_number_integer() && j.get<std::int64_t>() >= 0, "config: " + what + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& what) {
  require(j.is_string(), "config: " + what + " must be a string");
  return j.get<std::string>();
}

geometry::Point2 get_point(const json& j, const std::string& what) {
  require(j.is_array() && j.size() == 2, "config: " + what + " must be [x, y]");
  return {get_number(j[0], what), get_number(j[1], what)};
}

json point_json(geometry::Point2 p) { return json::array({p.x, p.y}); }
json point_json(conformal::cplx z) { return json::array({z.real(), z.imag()}); }

void validate_domain(const DomainSpec& d) {
  if (!d.vertex_file.empty()) {
    require(d.builtin.empty(), "config: domain takes either builtin or vertex_file");
    require(std::filesystem::exists(d.vertex_file), "config: vertex file '" + d.vertex_file + "' does not exist");
    return;
  }
  const auto& table = builtin_parameters();
  const auto it = table.find(d.builtin);
  require(it != table.end(), "config: unknown builtin domain '" + d.builtin + "'");
  for (const auto& [key, value] : d.parameters) {
    require(it->second.count(key) == 1, "config: domain '" + d.builtin + "' has no parameter '" + key + "'");
    require(std::isfinite(value), "config: domain parameter '" + key + "' must be finite");
  }
}

void validate(const ExperimentConfig& c) {
  validate_domain(c.domain);
  const auto& ops = operation_names();
  for (const auto& op : c.operations)
    require(std::find(ops.begin(), ops.end(), op) != ops.end(), "config: unknown operation '" + op + "'");
  const std::set<std::string> kinds = {"auto", "sc", "zipper", "closed-form", "none"};
  require(kinds.count(c.engine.kind) == 1, "config: unknown engine kind '" + c.engine.kind + "'");
  require(c.engine.sc_nodes >= 4, "config: engine.sc_nodes must be at least 4");
  require(c.engine.zipper.max_spacing >= 0.0, "config: engine.zipper.max_spacing must be nonnegative");
  require(c.engine.zipper.crowding >= 0.0 && c.engine.zipper.crowding < 1.0,
          "config: engine.zipper.crowding must lie in [0, 1)");
  for (const auto& w : c.windows) {
    if (w.kind != WindowSpec::Kind::kAngles) continue;
    diagnostics::ArcWindow{w.a, w.b}.validate();
  }
  diagnostics::validate_r_grid(c.grid.resolve(), 2);
  require(c.schedule.min_level >= 0 && c.schedule.max_level >= c.schedule.min_level && c.schedule.max_level <= 30,
          "config: schedule levels must satisfy 0 <= min_level <= max_level <= 30");
  require(c.schedule.rel_tol > 0.0, "config: schedule.rel_tol must be positive");
  for (double r : c.image_radii) require(r > 0.0 && r < 1.0, "config: image_radii must lie in (0, 1)");
  for (double t : c.nt_angles) require(std::isfinite(t), "config: nt_angles must be finite");
  require(c.monotonicity_radii >= 2, "config: monotonicity_radii must be at least 2");
  require(c.collar.polygons >= 1 && c.collar.vertices >= 4 && c.collar.margin > 0.0,
          "config: collar needs polygons >= 1, vertices >= 4, margin > 0");
  require(c.ladder.epsilon > 0.0 && c.ladder.epsilon < 1.0, "config: ladder.epsilon must lie in (0, 1)");
  require(c.ladder.min_level >= 0 && c.ladder.max_level >= c.ladder.min_level && c.ladder.max_level <= 30,
          "config: ladder levels must satisfy 0 <= min_level <= max_level <= 30");
  require(!c.output_dir.empty(), "config: output_dir must not be empty");
}

DomainSpec domain_from_json(const json& j) {
  if (j.is_string()) return DomainSpec::parse(j.get<std::string>());
  check_keys(j, "domain", {"builtin", "parameters", "vertex_file"});
  DomainSpec d;
  d.builtin.clear();
  if (j.contains("builtin")) d.builtin = get_string(j["builtin"], "domain.builtin");
  if (j.contains("vertex_file")) d.vertex_file = get_string(j["vertex_file"], "domain.vertex_file");
  if (j.contains("parameters")) {
    require(j["parameters"].is_object(), "config: domain.parameters must be an object");
    for (const auto& [key, value] : j["parameters"].items())
      d.parameters[key] = get_number(value, "domain.parameters." + key);
  }
  require(!d.builtin.empty() || !d.vertex_file.empty(), "config: domain needs builtin or vertex_file");
  return d;
}

json domain_to_json(const DomainSpec& d) {
  if (!d.vertex_file.empty()) return {{"vertex_file", d.vertex_file}};
  json params = json::object();
  for (const auto& [key, value] : d.parameters) params[key] = value;
  return {{"builtin", d.builtin}, {"parameters", params}};
}

EngineSpec engine_from_json(const json& j, EngineSpec e) {
  check_keys(j, "engine", {"kind", "w0", "closed_form", "sc_nodes", "zipper"});
  if (j.contains("kind")) e.kind = get_string(j["kind"], "engine.kind");
  if (j.contains("w0")) e.w0 = get_point(j["w0"], "engine.w0").as_complex();
  if (j.contains("sc_nodes")) e.sc_nodes = get_int(j["sc_nodes"], "engine.sc_nodes");
  if (j.contains("closed_form")) {
    const json& c = j["closed_form"];
    check_keys(c, "engine.closed_form", {"name", "c", "d", "a"});
    if (c.contains("name")) e.closed_form.name = get_string(c["name"], "engine.closed_form.name");
    if (c.contains("c")) e.closed_form.c = get_point(c["c"], "engine.closed_form.c").as_complex();
    if (c.contains("d")) e.closed_form.d = get_point(c["d"], "engine.closed_form.d").as_complex();
    if (c.contains("a")) e.closed_form.a = get_point(c["a"], "engine.closed_form.a").as_complex();
  }
  if (j.contains("zipper")) {
    const json& z = j["zipper"];
    check_keys(z, "engine.zipper", {"max_spacing", "crowding", "start", "min_samples"});
    if (z.contains("max_spacing")) e.zipper.max_spacing = get_number(z["max_spacing"], "engine.zipper.max_spacing");
    if (z.contains("crowding")) e.zipper.crowding = get_number(z["crowding"], "engine.zipper.crowding");
    if (z.contains("start")) e.zipper.start = get_count(z["start"], "engine.zipper.start");
    if (z.contains("min_samples")) e.zipper.min_samples = get_count(z["min_samples"], "engine.zipper.min_samples");
  }
  return e;
}

json engine_to_json(const EngineSpec& e) {
  json j = {{"kind", e.kind},
            {"sc_nodes", e.sc_nodes},
            {"closed_form",
             {{"name", e.closed_form.name},
              {"c", point_json(e.closed_form.c)},
              {"d", point_json(e.closed_form.d)},
              {"a", point_json(e.closed_form.a)}}},
            {"zipper",
             {{"max_spacing", e.zipper.max_spacing},
              {"crowding", e.zipper.crowding},
              {"start", e.zipper.start},
              {"min_samples", e.zipper.min_samples}}}};
  if (e.w0) j["w0"] = point_json(*e.w0);
  return j;
}

WindowSpec window_from_json(const json& j) {
  WindowSpec w;
  if (j.is_string()) {
    require(j.get<std::string>() == "full", "config: a window string must be \"full\"");
    w.kind = WindowSpec::Kind::kFull;
    return w;
  }
  if (j.is_array()) {
    require(j.size() == 2, "config: a window must be [a, b]");
    w.a = get_number(j[0], "window a");
    w.b = get_number(j[1], "window b");
    return w;
  }
  check_keys(j, "window", {"from", "to"});
  require(j.contains("from") && j.contains("to"), "config: a point window needs from and to");
  w.kind = WindowSpec::Kind::kPoints;
  w.from = get_point(j["from"], "window.from");
  w.to = get_point(j["to"], "window.to");
  return w;
}

json window_to_json(const WindowSpec& w) {
  switch (w.kind) {
    case WindowSpec::Kind::kFull: return "full";
    case WindowSpec::Kind::kPoints: return {{"from", point_json(w.from)}, {"to", point_json(w.to)}};
    case WindowSpec::Kind::kAngles: break;
  }
  return json::array({w.a, w.b});
}

std::vector<double> number_list(const json& j, const std::string& what) {
  require(j.is_array(), "config: " + what + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_number(v, what));
  return out;
}

}  // namespace

DomainSpec DomainSpec::parse(const std::string& text) {
  DomainSpec d;
  d.builtin.clear();
  if (text.rfind("file:", 0) == 0) {
    d.vertex_file = text.substr(5);
    require(!d.vertex_file.empty(), "domain: empty file path");
    return d;
  }
  const auto colon = text.find(':');
  d.builtin = text.substr(0, colon);
  if (colon == std::string::npos) return d;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto eq = item.find('=');
    require(eq != std::string::npos && eq > 0, "domain: expected key=value in '" + item + "'");
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used > 0 && used == item.size() - eq - 1, "domain: bad number in '" + item + "'");
    d.parameters[item.substr(0, eq)] = value;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return d;
}

double DomainSpec::parameter(const std::string& key, double fallback) const {
  const auto it = parameters.find(key);
  return it == parameters.end() ? fallback : it->second;
}

std::string DomainSpec::label() const {
  if (!vertex_file.empty()) return "file:" + std::filesystem::path(vertex_file).filename().string();
  std::string out = builtin;
  char sep = ':';
  for (const auto& [key, value] : parameters) {
    out += sep + key + "=" + format_double(value);
    sep = ',';
  }
  return out;
}

std::vector<double> GridSpec::resolve() const {
  if (!radii.empty()) return radii;
  return diagnostics::default_r_grid(last, first);
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "affine-sanity", "square-sc",      "rectangle-sc",         "convex-polygon-monotonicity",
      "ellipse-zipper", "cos1x-candidate", "collar-extension-demo"};
  return names;
}

const std::vector<std::string>& operation_names() {
  static const std::vector<std::string> names = {
      "radial-mean", "l1-profile", "image-length", "boundary-length", "liminf",
      "equivalence", "monotonicity", "nt-limit",   "ladder",          "collar"};
  return names;
}

ExperimentConfig builtin_config(const std::string& name) {
  ExperimentConfig c;
  c.experiment = name;
  c.output_dir = "arcmap-out/" + name;
  if (name == "affine-sanity") {
    c.domain = DomainSpec::parse("disk");
    c.engine.kind = "closed-form";
    c.engine.closed_form = {.name = "affine", .c = 2.0, .d = {0.5, -0.25}};
    c.windows = {{.a = 0.0, .b = kPi / 2}, {.a = 1.0, .b = 4.0}, {.kind = WindowSpec::Kind::kFull}};
    c.operations = {"radial-mean", "l1-profile", "image-length", "boundary-length", "liminf",
                    "equivalence", "monotonicity", "nt-limit"};
    c.nt_angles = {0.0, 2.0};
    c.image_radii = {0.5, 1.0 - 1e-4};
  } else if (name == "square-sc") {
    c.domain = DomainSpec::parse("square");
    c.engine.kind = "sc";
    c.windows = {{.a = -0.5, .b = 0.5}, {.a = 0.3, .b = 1.2}, {.a = 0.0, .b = 3.0}, {.kind = WindowSpec::Kind::kFull}};
    c.grid.last = 19;
    c.operations = {"l1-profile", "image-length", "boundary-length", "liminf", "equivalence", "monotonicity",
                    "nt-limit"};
    c.nt_angles = {0.0};
    c.nt_singular_angles = true;
    c.image_radii = {0.99, 1.0 - 1e-4};
  } else if (name == "rectangle-sc") {
    c.domain = DomainSpec::parse("rectangle");
    c.engine.kind = "sc";
    c.windows = {{.a = -0.3, .b = 0.3}, {.a = 0.2, .b = 1.4}, {.kind = WindowSpec::Kind::kFull}};
    c.grid.last = 19;
    c.operations = {"l1-profile", "image-length", "boundary-length", "liminf", "equivalence", "monotonicity"};
    c.image_radii = {1.0 - 1e-4};
  } else if (name == "convex-polygon-monotonicity") {
    c.domain = DomainSpec::parse("regular-polygon");
    c.engine.kind = "sc";
    c.windows = {{.kind = WindowSpec::Kind::kFull}, {.a = 0.0, .b = kPi / 2}, {.a = 1.0, .b = 2.5},
                 {.a = 3.0, .b = 3.4}};
    c.operations = {"monotonicity", "image-length"};
    c.image_radii = {0.9};
  } else if (name == "ellipse-zipper") {
    c.domain = DomainSpec::parse("ellipse");
    c.engine.kind = "zipper";
    c.windows = {{.a = 0.2, .b = 1.5}, {.a = 2.0, .b = 3.0}};
    c.monotonicity_radii = 24;
    c.operations = {"l1-profile", "image-length", "boundary-length", "liminf", "equivalence", "monotonicity"};
    c.image_radii = {0.99};
  } else if (name == "cos1x-candidate") {
    c.domain = DomainSpec::parse("candidate");
    c.engine.kind = "zipper";
    c.engine.w0 = conformal::cplx(0.0, -2.5);
    c.engine.zipper.max_spacing = 0.05;
    c.windows = {{.kind = WindowSpec::Kind::kPoints, .from = {0.3, 0.3 * std::cos(1.0 / 0.3)}, .to = {-0.5, 0.0}},
                 {.kind = WindowSpec::Kind::kPoints, .from = {0.0, -5.0}, .to = {1.0, -3.0}}};
    c.operations = {"ladder", "equivalence", "liminf", "monotonicity"};
    c.ladder = {.epsilon = 1e-4, .min_level = 8, .max_level = 20};
  } else if (name == "collar-extension-demo") {
    c.domain = DomainSpec::parse("square");
    c.engine.kind = "none";
    c.operations = {"collar"};
    c.collar = {.polygons = 20, .vertices = 12, .margin = 0.05};
  } else {
    fail(ErrorKind::kInvalidInput, "unknown experiment '" + name + "'");
  }
  validate(c);
  return c;
}

ExperimentConfig parse_config(const json& j, const ExperimentConfig& defaults) {
  check_keys(j, "config",
             {"$schema", "experiment", "domain", "engine", "windows", "grid", "schedule", "operations", "nt_angles",
              "nt_singular_angles", "image_radii", "monotonicity_radii", "collar", "ladder", "output_dir", "seed"});
  ExperimentConfig c = defaults;
  if (j.contains("experiment")) c.experiment = get_string(j["experiment"], "experiment");
  if (j.contains("domain")) c.domain = domain_from_json(j["domain"]);
  if (j.contains("engine")) c.engine = engine_from_json(j["engine"], c.engine);
  if (j.contains("windows")) {
    require(j["windows"].is_array(), "config: windows must be an array");
    c.windows.clear();
    for (const auto& w : j["windows"]) c.windows.push_back(window_from_json(w));
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, "grid", {"first", "last", "radii"});
    c.grid = {};
    if (g.contains("first")) c.grid.first = get_int(g["first"], "grid.first");
    if (g.contains("last")) c.grid.last = get_int(g["last"], "grid.last");
    if (g.contains("radii")) c.grid.radii = number_list(g["radii"], "grid.radii");
    require(c.grid.first >= 1 && c.grid.last >= c.grid.first, "config: grid needs 1 <= first <= last");
  }
  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    check_keys(s, "schedule", {"min_level", "max_level", "rel_tol"});
    if (s.contains("min_level")) c.schedule.min_level = get_int(s["min_level"], "schedule.min_level");
    if (s.contains("max_level")) c.schedule.max_level = get_int(s["max_level"], "schedule.max_level");
    if (s.contains("rel_tol")) c.schedule.rel_tol = get_number(s["rel_tol"], "schedule.rel_tol");
  }
  if (j.contains("operations")) {
    require(j["operations"].is_array(), "config: operations must be an array");
    c.operations.clear();
    for (const auto& op : j["operations"]) c.operations.push_back(get_string(op, "operation"));
  }
  if (j.contains("nt_angles")) c.nt_angles = number_list(j["nt_angles"], "nt_angles");
  if (j.contains("nt_singular_angles")) {
    require(j["nt_singular_angles"].is_boolean(), "config: nt_singular_angles must be a boolean");
    c.nt_singular_angles = j["nt_singular_angles"].get<bool>();
  }
  if (j.contains("image_radii")) c.image_radii = number_list(j["image_radii"], "image_radii");
  if (j.contains("monotonicity_radii")) c.monotonicity_radii = get_int(j["monotonicity_radii"], "monotonicity_radii");
  if (j.contains("collar")) {
    const json& s = j["collar"];
    check_keys(s, "collar", {"polygons", "vertices", "margin"});
    if (s.contains("polygons")) c.collar.polygons = get_int(s["polygons"], "collar.polygons");
    if (s.contains("vertices")) c.collar.vertices = get_int(s["vertices"], "collar.vertices");
    if (s.contains("margin")) c.collar.margin = get_number(s["margin"], "collar.margin");
  }
  if (j.contains("ladder")) {
    const json& s = j["ladder"];
    check_keys(s, "ladder", {"epsilon", "min_level", "max_level"});
    if (s.contains("epsilon")) c.ladder.epsilon = get_number(s["epsilon"], "ladder.epsilon");
    if (s.contains("min_level")) c.ladder.min_level = get_int(s["min_level"], "ladder.min_level");
    if (s.contains("max_level")) c.ladder.max_level = get_int(s["max_level"], "ladder.max_level");
  }
  if (j.contains("output_dir")) c.output_dir = get_string(j["output_dir"], "output_dir");
  if (j.contains("seed")) c.seed = get_count(j["seed"], "seed");
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path, const ExperimentConfig& defaults) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIoError, "config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kInvalidInput, "config: " + std::string(e.what()));
  }
  return parse_config(j, defaults);
}

json to_json(const ExperimentConfig& c) {
  json windows = json::array();
  for (const auto& w : c.windows) windows.push_back(window_to_json(w));
  json grid = {{"first", c.grid.first}, {"last", c.grid.last}};
  if (!c.grid.radii.empty()) grid["radii"] = c.grid.radii;
  return {{"experiment", c.experiment},
          {"domain", domain_to_json(c.domain)},
          {"engine", engine_to_json(c.engine)},
          {"windows", windows},
          {"grid", grid},
          {"schedule",
           {{"min_level", c.schedule.min_level},
            {"max_level", c.schedule.max_level},
            {"rel_tol", c.schedule.rel_tol}}},
          {"operations", c.operations},
          {"nt_angles", c.nt_angles},
          {"nt_singular_angles", c.nt_singular_angles},
          {"image_radii", c.image_radii},
          {"monotonicity_radii", c.monotonicity_radii},
          {"collar", {{"polygons", c.collar.polygons}, {"vertices", c.collar.vertices}, {"margin", c.collar.margin}}},
          {"ladder",
           {{"epsilon", c.ladder.epsilon}, {"min_level", c.ladder.min_level}, {"max_level", c.ladder.max_level}}},
          {"output_dir", c.output_dir},
          {"seed", c.seed}};
}

const json& config_schema() {
  static const json schema = json::parse(R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "arcmap experiment configuration",
  "type": "object",
  "additionalProperties": false,
  "definitions": {
    "point": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    "level": {"type": "integer", "minimum": 0, "maximum": 30}
  },
  "properties": {
    "$schema": {"type": "string"},
    "experiment": {"type": "string"},
    "domain": {
      "oneOf": [
        {"type": "string", "description": "name, name:key=value,... or file:<path>"},
        {
          "type": "object",
          "additionalProperties": false,
          "properties": {
            "builtin": {"enum": ["disk", "square", "rectangle", "regular-polygon", "ellipse", "candidate"]},
            "parameters": {"type": "object", "additionalProperties": {"type": "number"}},
            "vertex_file": {"type": "string"}
          }
        }
      ]
    },
    "engine": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "kind": {"enum": ["auto", "sc", "zipper", "closed-form", "none"]},
        "w0": {"$ref": "#/definitions/point"},
        "sc_nodes": {"type": "integer", "minimum": 4},
        "closed_form": {
          "type": "object",
          "additionalProperties": false,
          "properties": {
            "name": {"enum": ["identity", "affine", "univalent-poly"]},
            "c": {"$ref": "#/definitions/point"},
            "d": {"$ref": "#/definitions/point"},
            "a": {"$ref": "#/definitions/point"}
          }
        },
        "zipper": {
          "type": "object",
          "additionalProperties": false,
          "properties": {
            "max_spacing": {"type": "number", "minimum": 0},
            "crowding": {"type": "number", "minimum": 0, "exclusiveMaximum": 1},
            "start": {"type": "integer", "minimum": 0},
            "min_samples": {"type": "integer", "minimum": 0}
          }
        }
      }
    },
    "windows": {
      "type": "array",
      "items": {
        "oneOf": [
          {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
          {"const": "full"},
          {
            "type": "object",
            "additionalProperties": false,
            "required": ["from", "to"],
            "properties": {"from": {"$ref": "#/definitions/point"}, "to": {"$ref": "#/definitions/point"}}
          }
        ]
      }
    },
    "grid": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "first": {"type": "integer", "minimum": 1},
        "last": {"type": "integer", "minimum": 1},
        "radii": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}}
      }
    },
    "schedule": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "min_level": {"$ref": "#/definitions/level"},
        "max_level": {"$ref": "#/definitions/level"},
        "rel_tol": {"type": "number", "exclusiveMinimum": 0}
      }
    },
    "operations": {
      "type": "array",
      "items": {"enum": ["radial-mean", "l1-profile", "image-length", "boundary-length", "liminf",
                         "equivalence", "monotonicity", "nt-limit", "ladder", "collar"]}
    },
    "nt_angles": {"type": "array", "items": {"type": "number"}},
    "nt_singular_angles": {"type": "boolean"},
    "image_radii": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}},
    "monotonicity_radii": {"type": "integer", "minimum": 2},
    "collar": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "polygons": {"type": "integer", "minimum": 1},
        "vertices": {"type": "integer", "minimum": 4},
        "margin": {"type": "number", "exclusiveMinimum": 0}
      }
    },
    "ladder": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "epsilon": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "min_level": {"$ref": "#/definitions/level"},
        "max_level": {"$ref": "#/definitions/level"}
      }
    },
    "output_dir": {"type": "string", "minLength": 1},
    "seed": {"type": "integer", "minimum": 0}
  }
})");
  return schema;
}

}  // namespace arcmap::harness
