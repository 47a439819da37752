#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arcmap/diagnostics/report.hpp"
#include "arcmap/error.hpp"
#include "arcmap/geometry/collar.hpp"
#include "arcmap/harness/config.hpp"

namespace arcmap::harness {

std::string version();

/// Boundary of the domain; empty for the disk.
std::optional<geometry::JordanCurve> build_domain(const DomainSpec& spec);

/// "auto" resolved against the domain: closed-form for the disk, SC for
/// builtin polygons and vertex files of at most 32 vertices, zipper otherwise.
std::string resolve_engine_kind(const DomainSpec& domain, const std::optional<geometry::JordanCurve>& curve,
                                const EngineSpec& spec);

/// Area centroid of the boundary polygon; kInvalidInput when it falls outside.
conformal::cplx default_w0(const geometry::JordanCurve& curve);

conformal::Engine build_engine(const DomainSpec& domain, const std::optional<geometry::JordanCurve>& curve,
                               const EngineSpec& spec);

diagnostics::ArcWindow resolve_window(const conformal::Engine& engine, const WindowSpec& spec);

/// r_i = 1 - 2^{-(1 + 13 i / (count - 1))}: log-uniform depths from 1/2 to 2^{-14}.
std::vector<double> dense_r_grid(int count);

/// Star-shaped polygon about the origin with jittered angles and radii in [r_min, 1].
std::vector<geometry::Point2> random_star_polygon(std::mt19937_64& rng, int vertices, double r_min = 0.45);

/// Failed postconditions of a collar: simplicity of the new curve, connector
/// inside the original domain, subarc vertices on the new curve in order.
int collar_violations(const geometry::JordanCurve& original, geometry::SubArc subarc,
                      const geometry::CollarResult& result);

struct CollarTrial {
  int index = 0;
  std::size_t vertices = 0;
  geometry::SubArc subarc;
  /// ok | violation | precondition | resolution
  std::string status;
  int violations = 0;
  double perimeter = 0.0;
  std::optional<geometry::CollarResult> result;
  std::optional<geometry::JordanCurve> polygon;
};

/// Seeded random polygons and subarcs, each run through collar_extend.
std::vector<CollarTrial> collar_trials(std::uint64_t seed, const CollarSpec& spec);

/// Row flags that turn a clean run into exit code 2.
bool is_issue_flag(const std::string& flag);

struct RunResult {
  nlohmann::json manifest;
  std::vector<diagnostics::CsvRow> rows;
  /// Reasons for exit code 2.
  std::vector<std::string> issues;
  std::optional<ErrorKind> error_kind;
  std::string error;
  std::vector<std::filesystem::path> files;
  /// 0 clean, 2 inconsistency or accuracy flag, 1 build failure.
  int exit_code = 0;
};

/// Runs the configured operations. With write_files the manifest, CSV and
/// plots go to config.output_dir, each written atomically.
RunResult run_experiment(const ExperimentConfig& config, bool write_files = true);

}  // namespace arcmap::harness
