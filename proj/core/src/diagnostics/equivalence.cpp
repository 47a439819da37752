#include "arcmap/diagnostics/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "arcmap/diagnostics/means.hpp"
#include "arcmap/error.hpp"

namespace arcmap::diagnostics {

Verdict profile_verdict(const RadialProfile& profile, std::size_t tail, double bounded_range, double growth_budget) {
  const auto& v = profile.values;
  require(!v.empty(), "profile_verdict: empty profile");
  for (const Estimate& e : v)
    if (!std::isfinite(e.value)) return Verdict::kDivergent;
  const std::size_t k = std::clamp<std::size_t>(tail, 1, v.size());
  double lo = v[v.size() - k].value, hi = lo;
  for (std::size_t i = v.size() - k; i < v.size(); ++i) {
    lo = std::min(lo, v[i].value);
    hi = std::max(hi, v[i].value);
  }
  if (hi <= 0.0 || (hi - lo) / hi < bounded_range) return Verdict::kFinite;
  if (v.front().value > 0.0 && v.back().value / v.front().value > growth_budget) return Verdict::kDivergent;
  return Verdict::kInconclusive;
}

EquivalenceReport equivalence_suite(const Engine& engine, const ArcWindow& window, const EquivalenceBudgets& budgets) {
  window.validate();
  require(window.length() < 2.0 * std::numbers::pi * (1.0 - 1e-12),
          "equivalence_suite: window must be a proper subarc of the circle");
  validate_r_grid(budgets.grid, 2);
  require(budgets.bounded_range > 0.0 && budgets.growth_budget > 1.0 && budgets.tail >= 2,
          "equivalence_suite: needs bounded_range > 0, growth_budget > 1, tail >= 2");

  EquivalenceReport rep;
  rep.window = window;
  rep.boundary = boundary_arc_length(engine, window, budgets.schedule, budgets.length_budget);
  rep.rectifiable = to_verdict(rep.boundary.verdict);

  rep.radial = radial_mean_profile(engine, window, budgets.grid, budgets.quad);
  rep.radial_mean = profile_verdict(rep.radial, budgets.tail, budgets.bounded_range, budgets.growth_budget);

  rep.images = image_length_profile(engine, window, budgets.grid, budgets.image);
  rep.image_lengths = profile_verdict(rep.images, budgets.tail, budgets.bounded_range, budgets.growth_budget);

  if (std::any_of(rep.radial.values.begin(), rep.radial.values.end(), [](const Estimate& e) { return !e.converged; }))
    rep.flags.push_back("radial-mean-accuracy-not-reached");
  if (std::any_of(rep.images.values.begin(), rep.images.values.end(), [](const Estimate& e) { return !e.converged; }))
    rep.flags.push_back("image-length-accuracy-not-reached");

  rep.consistent = rep.rectifiable == rep.radial_mean && rep.radial_mean == rep.image_lengths &&
                   rep.rectifiable != Verdict::kInconclusive;
  return rep;
}

}  // namespace arcmap::diagnostics
