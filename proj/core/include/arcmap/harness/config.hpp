#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "arcmap/conformal/engine.hpp"
#include "arcmap/diagnostics/types.hpp"
#include "arcmap/geometry/arc_length.hpp"

namespace arcmap::harness {

using nlohmann::json;

/// A builtin shape with named parameters, or a vertex file.
///   builtins: disk, square(side), rectangle(width, height),
///   regular-polygon(sides, radius), ellipse(a, b, samples),
///   candidate(epsilon, samples_per_oscillation)
struct DomainSpec {
  std::string builtin = "square";
  std::map<std::string, double> parameters;
  std::string vertex_file;

  /// "name" or "name:key=value,key=value"; "file:<path>" reads a vertex file.
  static DomainSpec parse(const std::string& text);
  double parameter(const std::string& key, double fallback) const;
  std::string label() const;
};

struct ZipperSpec {
  /// Split boundary segments longer than this before building (0 = off).
  double max_spacing = 0.0;
  double crowding = 1e-14;
  std::size_t start = 0;
  std::size_t min_samples = 64;
};

struct EngineSpec {
  /// auto | sc | zipper | closed-form | none. auto picks SC for polygons,
  /// zipper otherwise, closed-form for the disk.
  std::string kind = "auto";
  std::optional<conformal::cplx> w0;
  conformal::ClosedFormSpec closed_form{};
  int sc_nodes = 24;
  ZipperSpec zipper{};
};

/// [a, b] in angle, the full circle, or the boundary stretch between two
/// points of the target (resolved through invert_boundary).
struct WindowSpec {
  enum class Kind { kAngles, kFull, kPoints } kind = Kind::kAngles;
  double a = 0.0;
  double b = 0.0;
  geometry::Point2 from{};
  geometry::Point2 to{};
};

struct GridSpec {
  int first = 1;
  int last = 14;
  std::vector<double> radii;
  std::vector<double> resolve() const;
};

struct CollarSpec {
  int polygons = 20;
  int vertices = 12;
  double margin = 0.05;
};

struct LadderSpec {
  double epsilon = 1e-4;
  int min_level = 8;
  int max_level = 20;
};

struct ExperimentConfig {
  std::string experiment;
  DomainSpec domain;
  EngineSpec engine;
  std::vector<WindowSpec> windows;
  GridSpec grid;
  geometry::LadderSchedule schedule;
  std::vector<std::string> operations;
  std::vector<double> nt_angles;
  bool nt_singular_angles = false;
  std::vector<double> image_radii;
  int monotonicity_radii = 64;
  CollarSpec collar;
  LadderSpec ladder;
  std::string output_dir = "arcmap-out";
  std::uint64_t seed = 1;
};

const std::vector<std::string>& experiment_names();
const std::vector<std::string>& operation_names();

/// Default configuration of a builtin experiment.
ExperimentConfig builtin_config(const std::string& name);

/// Strict parse: unknown keys, wrong types and invalid values are rejected.
/// Missing keys keep the values of `defaults`.
ExperimentConfig parse_config(const json& j, const ExperimentConfig& defaults);
ExperimentConfig load_config(const std::string& path, const ExperimentConfig& defaults);
json to_json(const ExperimentConfig& config);

/// JSON schema of the configuration file.
const json& config_schema();

}  // namespace arcmap::harness
