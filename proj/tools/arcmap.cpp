#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "arcmap/diagnostics/equivalence.hpp"
#include "arcmap/diagnostics/lengths.hpp"
#include "arcmap/diagnostics/limits.hpp"
#include "arcmap/diagnostics/means.hpp"
#include "arcmap/diagnostics/report.hpp"
#include "arcmap/error.hpp"
#include "arcmap/geometry/collar.hpp"
#include "arcmap/geometry/curve_io.hpp"
#include "arcmap/harness/config.hpp"
#include "arcmap/harness/emit.hpp"
#include "arcmap/harness/experiment.hpp"
#include "arcmap/parallel.hpp"

using namespace arcmap;
using nlohmann::json;
namespace d = arcmap::diagnostics;
namespace h = arcmap::harness;

namespace {

std::pair<double, double> parse_pair(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  double a = 0.0, b = 0.0;
  char comma = 0;
  if (!(in >> a >> comma >> b) || comma != ',' || !in.eof())
    fail(ErrorKind::kInvalidInput, what + ": expected two numbers 'a,b', got '" + text + "'");
  return {a, b};
}

conformal::Engine load_engine(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIoError, "cannot open engine file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kInvalidInput, "engine file: " + std::string(e.what()));
  }
  return conformal::engine_from_json(j);
}

int report_error(const Error& e) {
  json j = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
  std::cerr << j.dump(2) << "\n";
  return 1;
}

void apply_thread_env() {
  if (const char* env = std::getenv("ARCMAP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) set_thread_count(n);
  }
}

int rows_exit(const std::vector<d::CsvRow>& rows) {
  for (const auto& row : rows)
    if (h::is_issue_flag(row.flag)) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"Riemann map diagnostics for Jordan domains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", h::version());

  auto* list = app.add_subcommand("list", "List builtin experiments");

  auto* schema = app.add_subcommand("schema", "Print the experiment config JSON schema");

  std::string domain_text, engine_kind = "auto", engine_out, w0_text, cf_name = "identity", cf_c = "1,0",
                                cf_d = "0,0", cf_a = "0,0";
  double max_spacing = 0.0, crowding = 1e-14;
  int sc_nodes = 24;
  auto* build = app.add_subcommand("build-engine", "Build a Riemann map and save it as JSON");
  build->add_option("--domain", domain_text, "Builtin (name[:key=value,...]) or file:<path>")->required();
  build->add_option("--engine", engine_kind, "auto | sc | zipper | closed-form")
      ->check(CLI::IsMember({"auto", "sc", "zipper", "closed-form"}));
  build->add_option("--out", engine_out, "Output engine file")->required();
  build->add_option("--w0", w0_text, "Image of the origin, x,y");
  build->add_option("--closed-form", cf_name, "identity | affine | univalent-poly");
  build->add_option("--c", cf_c, "Affine coefficient c, x,y");
  build->add_option("--d", cf_d, "Affine offset d, x,y");
  build->add_option("--a", cf_a, "Quadratic coefficient a, x,y");
  build->add_option("--max-spacing", max_spacing, "Zipper resampling spacing (0 = off)");
  build->add_option("--crowding", crowding, "Zipper crowding threshold");
  build->add_option("--sc-nodes", sc_nodes, "Quadrature nodes per SC panel");

  std::string diag_op, diag_engine, window_text, json_out;
  int grid_first = 1, grid_last = 14;
  std::vector<double> radii;
  double r_single = 1.0 - 1e-4, t_angle = 0.0;
  auto* diagnose = app.add_subcommand("diagnose", "Run one diagnostic on a saved engine");
  diagnose->add_option("operation", diag_op)
      ->required()
      ->check(CLI::IsMember({"cauchy", "radial-mean", "image-length", "boundary-length", "liminf", "equivalence",
                             "monotonicity", "nt-limit"}));
  diagnose->add_option("--engine", diag_engine, "Engine file from build-engine")->required();
  diagnose->add_option("--window", window_text, "Arc window a,b in radians (default full circle)");
  diagnose->add_option("--grid-first", grid_first, "First k of r_k = 1 - 2^-k");
  diagnose->add_option("--grid-last", grid_last, "Last k of r_k = 1 - 2^-k");
  diagnose->add_option("--radii", radii, "Explicit radii instead of the dyadic grid")->delimiter(',');
  diagnose->add_option("--r", r_single, "Radius for image-length");
  diagnose->add_option("--t", t_angle, "Boundary angle for nt-limit");
  diagnose->add_option("--json", json_out, "Write the full JSON report here");

  std::string exp_name, exp_config, exp_out;
  bool no_files = false;
  auto* experiment = app.add_subcommand("experiment", "Run a builtin experiment");
  experiment->add_option("name", exp_name)->required()->check(CLI::IsMember(h::experiment_names()));
  experiment->add_option("--config", exp_config, "JSON config overriding the experiment defaults");
  experiment->add_option("--out", exp_out, "Output directory (overrides the config)");
  experiment->add_flag("--no-files", no_files, "Print the CSV instead of writing files");

  std::string curve_path, subarc_text, collar_out, collar_svg;
  double margin = 0.05;
  auto* collar = app.add_subcommand("collar-extend", "Embed a subarc of a polygon into an interior Jordan curve");
  collar->add_option("--curve", curve_path, "Curve file (.json or vertex text)")->required()->check(CLI::ExistingFile);
  collar->add_option("--subarc", subarc_text, "Parameter interval t0,t1")->required();
  collar->add_option("--margin", margin, "Required slack on either side");
  collar->add_option("--out", collar_out, "Write the new curve as JSON");
  collar->add_option("--svg", collar_svg, "Draw the polygon and the collar");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& name : h::experiment_names()) std::cout << name << "\n";
      return 0;
    }
    if (*schema) {
      std::cout << h::config_schema().dump(2) << "\n";
      return 0;
    }
    if (*build) {
      const auto domain = h::DomainSpec::parse(domain_text);
      h::EngineSpec spec;
      spec.kind = engine_kind;
      spec.sc_nodes = sc_nodes;
      spec.zipper.max_spacing = max_spacing;
      spec.zipper.crowding = crowding;
      if (!w0_text.empty()) {
        const auto [x, y] = parse_pair(w0_text, "--w0");
        spec.w0 = conformal::cplx(x, y);
      }
      auto to_c = [](const std::string& text, const std::string& what) {
        const auto [x, y] = parse_pair(text, what);
        return conformal::cplx(x, y);
      };
      spec.closed_form = {cf_name, to_c(cf_c, "--c"), to_c(cf_d, "--d"), to_c(cf_a, "--a")};
      const auto curve = h::build_domain(domain);
      const auto engine = h::build_engine(domain, curve, spec);
      h::write_file_atomic(engine_out, engine->to_json().dump() + "\n");
      json summary = {{"engine", engine->name()},
                      {"boundary_residual", engine->boundary_residual()},
                      {"flags", engine->flags()},
                      {"out", engine_out}};
      std::cout << summary.dump(2) << "\n";
      return engine->flags().empty() ? 0 : 2;
    }
    if (*diagnose) {
      const auto engine = load_engine(diag_engine);
      d::ArcWindow w = d::ArcWindow::full_circle();
      if (!window_text.empty()) {
        const auto [a, b] = parse_pair(window_text, "--window");
        w = {a, b};
      }
      w.validate();
      const std::vector<double> grid = radii.empty() ? d::default_r_grid(grid_last, grid_first) : radii;
      const d::RowContext ctx{"diagnose", engine->target().name(), engine->name()};
      std::vector<d::CsvRow> rows;
      json report;
      if (diag_op == "cauchy") {
        const auto p = d::l1_limit_profile(engine, w, grid);
        d::append_rows(rows, ctx, p);
        report = d::to_json(p);
      } else if (diag_op == "radial-mean") {
        const auto p = d::radial_mean_profile(engine, w, grid);
        d::append_rows(rows, ctx, w, p);
        report = d::to_json(p);
      } else if (diag_op == "image-length") {
        const auto il = d::image_curve_length(engine, w, r_single);
        d::append_rows(rows, ctx, w, il);
        report = d::to_json(il);
      } else if (diag_op == "boundary-length") {
        const auto r = d::boundary_arc_length(engine, w);
        d::append_rows(rows, ctx, w, r);
        report = d::to_json(r);
      } else if (diag_op == "liminf") {
        const auto r = d::liminf_check(engine, w, grid);
        d::append_rows(rows, ctx, r);
        report = d::to_json(r);
      } else if (diag_op == "equivalence") {
        const auto r = d::equivalence_suite(engine, w, {.grid = grid});
        d::append_rows(rows, ctx, r);
        report = d::to_json(r);
      } else if (diag_op == "monotonicity") {
        const auto r = d::monotonicity_scan(engine, w, grid);
        d::append_rows(rows, ctx, r);
        report = d::to_json(r);
      } else {
        const auto r = d::estimate_nontangential_limit(engine, t_angle, d::default_stolz());
        d::append_rows(rows, ctx, r);
        report = d::to_json(r);
      }
      std::cout << h::csv_document(rows);
      if (!json_out.empty()) h::write_file_atomic(json_out, report.dump(2) + "\n");
      return rows_exit(rows);
    }
    if (*experiment) {
      auto config = h::builtin_config(exp_name);
      if (!exp_config.empty()) config = h::load_config(exp_config, config);
      if (!exp_out.empty()) config.output_dir = exp_out;
      const auto result = h::run_experiment(config, !no_files);
      if (no_files) {
        std::cout << h::csv_document(result.rows);
      } else {
        for (const auto& f : result.files) std::cout << f.string() << "\n";
      }
      for (const auto& issue : result.issues) std::cerr << "issue: " << issue << "\n";
      if (result.error_kind) {
        json j = {{"error", {{"kind", std::string(to_string(*result.error_kind))}, {"message", result.error}}}};
        std::cerr << j.dump(2) << "\n";
      }
      return result.exit_code;
    }
    if (*collar) {
      const auto curve = geometry::load_curve(curve_path);
      const auto [t0, t1] = parse_pair(subarc_text, "--subarc");
      const geometry::SubArc sub{t0, t1};
      const auto result = geometry::collar_extend(curve, sub, margin);
      const int bad = h::collar_violations(curve, sub, result);
      json j = geometry::curve_to_json(result.curve);
      if (!collar_out.empty()) h::write_file_atomic(collar_out, j.dump(2) + "\n");
      if (!collar_svg.empty()) {
        auto outline = [](const geometry::JordanCurve& c, const std::string& label) {
          h::PlotSeries s{label, {}, {}};
          for (const auto& p : c.vertices()) s.x.push_back(p.x), s.y.push_back(p.y);
          return s;
        };
        h::emit_plot({"collar extension", "x", "y", {outline(curve, "polygon"), outline(result.curve, "collar")}},
                     collar_svg);
      }
      json summary = {{"segments", result.curve.segment_count()},
                      {"perimeter", result.curve.perimeter()},
                      {"cell_size", result.cell_size},
                      {"explored_cells", result.explored_cells},
                      {"violations", bad}};
      std::cout << summary.dump(2) << "\n";
      return bad == 0 ? 0 : 2;
    }
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    return report_error(Error(ErrorKind::kIoError, e.what()));
  }
  return 1;
}
