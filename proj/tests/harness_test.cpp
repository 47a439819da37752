#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "arcmap/error.hpp"
#include "arcmap/format.hpp"
#include "arcmap/harness/config.hpp"
#include "arcmap/harness/emit.hpp"
#include "arcmap/harness/experiment.hpp"

using namespace arcmap;
using namespace arcmap::harness;
using nlohmann::json;
using std::numbers::pi;

namespace {

bool throws_kind(ErrorKind kind, const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("arcmap-harness-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') field += '"', ++i;
      else if (c == '"') quoted = false;
      else field += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

ExperimentConfig quick_affine() {
  auto c = builtin_config("affine-sanity");
  c.grid.last = 10;
  c.monotonicity_radii = 8;
  return c;
}

}  // namespace

TEST_CASE("DomainSpec parsing") {
  const auto r = DomainSpec::parse("rectangle:width=3,height=0.5");
  CHECK(r.builtin == "rectangle");
  CHECK(r.parameter("width", 0.0) == 3.0);
  CHECK(r.parameter("height", 0.0) == 0.5);
  CHECK(r.parameter("depth", 7.0) == 7.0);
  CHECK(r.label() == "rectangle:height=0.5,width=3");
  const auto f = DomainSpec::parse("file:shapes/poly.txt");
  CHECK(f.vertex_file == "shapes/poly.txt");
  CHECK(f.builtin.empty());
  CHECK(DomainSpec::parse("square").parameters.empty());
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { DomainSpec::parse("square:side"); }));
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { DomainSpec::parse("square:side=1x"); }));
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { DomainSpec::parse("file:"); }));
}

TEST_CASE("builtin configs are valid and round trip") {
  CHECK(experiment_names().size() == 7);
  for (const auto& name : experiment_names()) {
    CAPTURE(name);
    const auto c = builtin_config(name);
    CHECK(c.experiment == name);
    const json j = to_json(c);
    const auto back = parse_config(j, ExperimentConfig{});
    CHECK(to_json(back) == j);
  }
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { builtin_config("no-such-experiment"); }));
}

TEST_CASE("config parsing is strict") {
  const auto base = builtin_config("square-sc");
  auto rejects = [&](const json& j) { return throws_kind(ErrorKind::kInvalidInput, [&] { parse_config(j, base); }); };
  CHECK(rejects({{"colour", "blue"}}));
  CHECK(rejects({{"engine", {{"kind", "sc"}, {"nodes", 10}}}}));
  CHECK(rejects({{"engine", {{"zipper", {{"spacing", 0.1}}}}}}));
  CHECK(rejects({{"grid", {{"last", 14}, {"step", 2}}}}));
  CHECK(rejects({{"seed", -1}}));
  CHECK(rejects({{"seed", "1"}}));
  CHECK(rejects({{"windows", {{0.0, 1.0, 2.0}}}}));
  CHECK(rejects({{"windows", {"half"}}}));
  CHECK(rejects({{"windows", {{1.0, 0.5}}}}));
  CHECK(rejects({{"windows", {{{"from", {0.0, 0.0}}}}}}));
  CHECK(rejects({{"grid", {{"radii", {0.5, 1.0}}}}}));
  CHECK(rejects({{"grid", {{"radii", {0.9, 0.5}}}}}));
  CHECK(rejects({{"operations", {"everything"}}}));
  CHECK(rejects({{"engine", {{"kind", "magic"}}}}));
  CHECK(rejects({{"domain", {{"builtin", "square"}, {"parameters", {{"radius", 2.0}}}}}}));
  CHECK(rejects({{"domain", {{"vertex_file", "/definitely/not/here.txt"}}}}));
  CHECK(rejects({{"image_radii", {1.0}}}));
  CHECK(throws_kind(ErrorKind::kIoError, [&] { load_config("/definitely/not/here.json", base); }));

  const auto c = parse_config({{"seed", 9},
                               {"windows", {{0.1, 0.2}, "full", {{"from", {0.5, 0.0}}, {"to", {1.0, 0.5}}}}},
                               {"grid", {{"last", 8}}},
                               {"domain", "rectangle:width=3"}},
                              base);
  CHECK(c.seed == 9);
  CHECK(c.windows.size() == 3);
  CHECK(c.windows[1].kind == WindowSpec::Kind::kFull);
  CHECK(c.windows[2].kind == WindowSpec::Kind::kPoints);
  CHECK(c.grid.resolve().size() == 8);
  CHECK(c.domain.parameter("width", 0.0) == 3.0);
  CHECK(c.engine.kind == base.engine.kind);
  CHECK(c.operations == base.operations);
}

TEST_CASE("schema covers every config key") {
  const json& schema = config_schema();
  CHECK(schema["additionalProperties"] == false);
  const json j = to_json(builtin_config("cos1x-candidate"));
  for (const auto& [key, value] : j.items()) {
    CAPTURE(key);
    CHECK(schema["properties"].contains(key));
    if (value.is_object() && schema["properties"][key].contains("properties")) {
      for (const auto& [inner, v] : value.items()) {
        (void)v;
        CAPTURE(inner);
        CHECK(schema["properties"][key]["properties"].contains(inner));
      }
    }
  }
  const auto ops = schema["properties"]["operations"]["items"]["enum"];
  CHECK(ops.size() == operation_names().size());
}

TEST_CASE("domains and engines") {
  const auto square = build_domain(DomainSpec::parse("square"));
  REQUIRE(square);
  const auto w0 = default_w0(*square);
  CHECK(w0.real() == doctest::Approx(0.5));
  CHECK(w0.imag() == doctest::Approx(0.5));
  CHECK(!build_domain(DomainSpec::parse("disk")));
  CHECK(resolve_engine_kind(DomainSpec::parse("square"), square, {}) == "sc");
  CHECK(resolve_engine_kind(DomainSpec::parse("disk"), std::nullopt, {}) == "closed-form");
  const auto ellipse = build_domain(DomainSpec::parse("ellipse:samples=64"));
  CHECK(resolve_engine_kind(DomainSpec::parse("ellipse"), ellipse, {}) == "zipper");
  CHECK(throws_kind(ErrorKind::kInvalidInput,
                    [&] { resolve_engine_kind(DomainSpec::parse("square"), square, {.kind = "closed-form"}); }));
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { build_domain(DomainSpec::parse("regular-polygon:sides=2.5")); }));

  const auto dir = scratch_dir("domain");
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "tri.txt");
    out << "# triangle\n0 0\n2 0\n0 2\n0 0\n";
  }
  const auto spec = DomainSpec::parse("file:" + (dir / "tri.txt").string());
  const auto tri = build_domain(spec);
  REQUIRE(tri);
  CHECK(tri->segment_count() == 3);
  CHECK(resolve_engine_kind(spec, tri, {}) == "sc");
  const auto engine = build_engine(spec, tri, {});
  CHECK(std::abs(engine->w0() - conformal::cplx(2.0 / 3.0, 2.0 / 3.0)) < 1e-12);

  const auto sc = build_engine(DomainSpec::parse("square"), square, {});
  const auto w = resolve_window(sc, {.kind = WindowSpec::Kind::kPoints, .from = {0.5, 0.0}, .to = {1.0, 0.5}});
  CHECK(w.a < w.b);
  CHECK(sc->boundary_correspondence(w.a).x == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sc->boundary_correspondence(w.b).y == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(throws_kind(ErrorKind::kInvalidInput, [&] {
    resolve_window(sc, {.kind = WindowSpec::Kind::kPoints, .from = {0.5, 0.5}, .to = {1.0, 0.5}});
  }));
  std::filesystem::remove_all(dir);
}

TEST_CASE("dense_r_grid") {
  const auto g = dense_r_grid(14);
  CHECK(g.front() == 0.5);
  CHECK(g.back() == 1.0 - std::exp2(-14.0));
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { dense_r_grid(1); }));
}

TEST_CASE("plot scales and rendering") {
  CHECK(!choose_scale({2.0, 2.0, 2.0}).log);
  const auto decay = choose_scale({1.0, 1e-2, 1e-5});
  CHECK(decay.log);
  CHECK(decay.lo == doctest::Approx(1e-5));
  CHECK(decay.hi == doctest::Approx(1.0));
  CHECK(!choose_scale({0.0, 1.0, 1000.0}).log);
  CHECK(!choose_scale({1.0, 50.0}).log);

  SUBCASE("constant profile is a horizontal line") {
    const std::string svg = render_svg({"flat", "1 - r", "value", {{"radial-mean <a&b>", {0.5, 0.25, 0.125}, {3, 3, 3}}}});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("radial-mean &lt;a&amp;b&gt;") != std::string::npos);
    const auto at = svg.find("points=\"");
    REQUIRE(at != std::string::npos);
    const auto end = svg.find('"', at + 8);
    std::istringstream pts(svg.substr(at + 8, end - at - 8));
    std::string pair;
    std::set<std::string> ys;
    while (pts >> pair) ys.insert(pair.substr(pair.find(',') + 1));
    CHECK(ys.size() == 1);
    CHECK(svg.find("(log)") == std::string::npos);
  }
  SUBCASE("decaying defects get a log y axis and decreasing screen heights") {
    const std::string svg = render_svg({"defects", "1 - r", "defect", {{"cauchy-defect", {0.5, 0.25, 0.125, 0.0625},
                                                                        {1e-1, 1e-2, 1e-3, 1e-4}}}});
    CHECK(svg.find("defect (log)") != std::string::npos);
    const auto at = svg.find("points=\"");
    const auto end = svg.find('"', at + 8);
    std::istringstream pts(svg.substr(at + 8, end - at - 8));
    std::string pair;
    std::vector<double> ys;
    while (pts >> pair) ys.push_back(std::stod(pair.substr(pair.find(',') + 1)));
    REQUIRE(ys.size() == 4);
    // Screen y grows downward.
    for (std::size_t i = 1; i < ys.size(); ++i) CHECK(ys[i] > ys[i - 1]);
  }
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { render_svg({"empty", "x", "y", {{"none", {}, {}}}}); }));
  CHECK(throws_kind(ErrorKind::kInvalidInput, [] { render_svg({"bad", "x", "y", {{"s", {1.0}, {}}}}); }));
}

TEST_CASE("atomic writes") {
  const auto dir = scratch_dir("atomic");
  write_file_atomic(dir / "nested" / "a.txt", "first");
  write_file_atomic(dir / "nested" / "a.txt", "second");
  CHECK(slurp(dir / "nested" / "a.txt") == "second");
  int entries = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir / "nested")) (void)e, ++entries;
  CHECK(entries == 1);
  CHECK(throws_kind(ErrorKind::kIoError, [] { write_file_atomic("/proc/arcmap-no-such/x.txt", "x"); }));
  std::filesystem::remove_all(dir);
}

TEST_CASE("collar trials are seeded") {
  const CollarSpec spec{.polygons = 6, .vertices = 10, .margin = 0.05};
  const auto a = collar_trials(11, spec);
  const auto b = collar_trials(11, spec);
  const auto c = collar_trials(12, spec);
  REQUIRE(a.size() == 6);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].subarc.t_start == b[i].subarc.t_start);
    CHECK(a[i].status == b[i].status);
    CHECK(a[i].perimeter == b[i].perimeter);
    differs = differs || a[i].subarc.t_start != c[i].subarc.t_start;
    if (a[i].status != "precondition") CHECK(a[i].status == "ok");
  }
  CHECK(differs);
}

TEST_CASE("affine-sanity run") {
  const auto result = run_experiment(quick_affine(), false);
  CHECK(result.exit_code == 0);
  CHECK(result.issues.empty());
  CHECK(result.files.empty());
  int defects = 0;
  for (const auto& row : result.rows) {
    if (row.quantity == "cauchy-defect") {
      ++defects;
      CHECK(row.value == 0.0);
    }
    if (row.quantity == "radial-mean" && row.b - row.a < 2 * pi) CHECK(row.value == doctest::Approx(2.0 * (row.b - row.a)).epsilon(1e-12));
  }
  CHECK(defects > 0);
  CHECK(result.manifest["engine"]["name"] == "affine");
  CHECK(result.manifest["exit_code"] == 0);
}

TEST_CASE("runs reproduce their CSV and mirror it in the manifest") {
  auto config = quick_affine();
  const auto d1 = scratch_dir("run1");
  const auto d2 = scratch_dir("run2");
  config.output_dir = d1.string();
  const auto r1 = run_experiment(config);
  config.output_dir = d2.string();
  const auto r2 = run_experiment(config);
  const std::string csv = slurp(d1 / "results.csv");
  CHECK(!csv.empty());
  CHECK(csv == slurp(d2 / "results.csv"));
  for (const char* f : {"manifest.json", "profiles.svg", "defects.svg", "monotonicity.svg"})
    CHECK(std::filesystem::exists(d1 / f));

  std::ifstream in(d1 / "manifest.json");
  const json manifest = json::parse(in);
  const json& rows = manifest["rows"];
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == diagnostics::csv_header());
  std::size_t i = 0;
  while (std::getline(lines, line)) {
    REQUIRE(i < rows.size());
    const auto fields = split_csv(line);
    REQUIRE(fields.size() == 11);
    const json& row = rows[i++];
    CHECK(fields[7] == row["quantity"]);
    CHECK(fields[10] == row["flag"]);
    if (!fields[8].empty()) CHECK(std::stod(fields[8]) == row["value"].get<double>());
    if (!fields[9].empty()) CHECK(std::stod(fields[9]) == row["tolerance"].get<double>());
    CHECK((!fields[9].empty() || !fields[10].empty()));
  }
  CHECK(i == rows.size());
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}

TEST_CASE("engine build failure is reported, not thrown") {
  auto config = builtin_config("square-sc");
  config.operations = {"collar"};
  config.collar.polygons = 2;
  config.engine.w0 = conformal::cplx(5.0, 5.0);
  const auto result = run_experiment(config, false);
  CHECK(result.exit_code == 1);
  REQUIRE(result.error_kind);
  CHECK(result.manifest.contains("error"));
  CHECK(result.rows.back().quantity == "engine-build");
  CHECK(result.rows.front().quantity == "collar-perimeter");
}
