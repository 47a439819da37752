#include <benchmark/benchmark.h>

#include <complex>

#include "arcmap/conformal/engine.hpp"
#include "arcmap/diagnostics/means.hpp"
#include "arcmap/geometry/arc_length.hpp"
#include "arcmap/geometry/candidate.hpp"

using namespace arcmap;

namespace {

const conformal::Engine& square_sc() {
  static const auto e = conformal::build_schwarz_christoffel(geometry::JordanCurve::square(), {0.5, 0.5});
  return e;
}

const conformal::Engine& ellipse_zipper() {
  static const auto e = conformal::build_zipper(geometry::JordanCurve::ellipse(2.0, 1.0, 512), {0.0, 0.0});
  return e;
}

void BM_ScEvaluate(benchmark::State& state) {
  const auto& e = square_sc();
  const conformal::cplx z = std::polar(0.95, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(e->eval(z));
}
BENCHMARK(BM_ScEvaluate);

void BM_ZipperEvaluate(benchmark::State& state) {
  const auto& e = ellipse_zipper();
  const conformal::cplx z = std::polar(0.95, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(e->eval(z));
}
BENCHMARK(BM_ZipperEvaluate);

void BM_ScBuild(benchmark::State& state) {
  const auto poly = geometry::JordanCurve::regular_polygon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(conformal::build_schwarz_christoffel(poly, {0.0, 0.0}));
}
BENCHMARK(BM_ScBuild)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_RadialMean(benchmark::State& state) {
  const auto& e = square_sc();
  const double r = 1.0 - std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diagnostics::radial_mean(e, {-0.5, 0.5}, r));
}
BENCHMARK(BM_RadialMean)->Arg(4)->Arg(10)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_CandidateLadder(benchmark::State& state) {
  const auto arc = geometry::candidate_top_arc();
  const int top = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(geometry::arc_length_estimate(arc, 1e-4, 1.0, {.min_level = 8, .max_level = top}));
}
BENCHMARK(BM_CandidateLadder)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
