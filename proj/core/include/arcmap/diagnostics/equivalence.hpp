#pragma once

#include <optional>

#include "arcmap/diagnostics/lengths.hpp"

namespace arcmap::diagnostics {

struct EquivalenceBudgets {
  std::vector<double> grid = default_r_grid();
  geometry::LadderSchedule schedule{};
  std::optional<double> length_budget{};
  /// Tail values within this relative range count as bounded.
  double bounded_range = 0.01;
  /// last / first above this counts as divergent.
  double growth_budget = 10.0;
  std::size_t tail = 4;
  ImageLengthOptions image{};
  QuadOverride quad{};
};

/// finite when the tail's relative range is below bounded_range, divergent
/// when last / first exceeds growth_budget, inconclusive otherwise.
Verdict profile_verdict(const RadialProfile& profile, std::size_t tail, double bounded_range, double growth_budget);

struct EquivalenceReport {
  ArcWindow window;
  Verdict rectifiable = Verdict::kInconclusive;
  Verdict radial_mean = Verdict::kInconclusive;
  Verdict image_lengths = Verdict::kInconclusive;
  /// All three verdicts equal and none inconclusive.
  bool consistent = false;
  geometry::LengthReport boundary;
  RadialProfile radial;
  RadialProfile images;
  /// Accuracy flags raised by the components.
  std::vector<std::string> flags;
};

/// The three characterizations of a rectifiable boundary arc, decided independently.
EquivalenceReport equivalence_suite(const Engine& engine, const ArcWindow& window,
                                    const EquivalenceBudgets& budgets = {});

}  // namespace arcmap::diagnostics
