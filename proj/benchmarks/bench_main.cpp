#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "trackcop/verification.hpp"

using namespace trackcop;

namespace {

DiagonalSpec fig2_spec(std::size_t n) {
  const auto delta = PLFunction::sample(
      [](double x) { return x - std::sin(std::numbers::pi * x) / std::numbers::pi; }, n);
  return make_diagonal(delta, Track::identity());
}

void BM_EligibilityByVariation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = fig2_spec(n);
  const auto psi = psi_bounds(spec).lower;
  for (auto _ : state) benchmark::DoNotOptimize(eligibility_by_variation(spec, psi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EligibilityByVariation)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_Quadruplet(benchmark::State& state) {
  const auto spec = fig2_spec(static_cast<std::size_t>(state.range(0)));
  const auto psi = psi_bounds(spec).lower;
  for (auto _ : state) benchmark::DoNotOptimize(quadruplet(spec, psi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Quadruplet)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_MaterializeGrid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = fig2_spec(n);
  const CopulaCpsi c(quadruplet(spec, psi_bounds(spec).upper));
  const auto mesh = uniform_knots(n);
  for (auto _ : state) benchmark::DoNotOptimize(materialize_grid(c, mesh));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaterializeGrid)->RangeMultiplier(2)->Range(101, 1001)->Complexity();

void BM_CheckGrid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = fig2_spec(n);
  const auto grid = materialize_grid(CopulaCpsi(quadruplet(spec, psi_bounds(spec).lower)), uniform_knots(n));
  for (auto _ : state) benchmark::DoNotOptimize(check_grid(grid, CheckMode::quasi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckGrid)->RangeMultiplier(2)->Range(101, 1001)->Complexity();

void BM_ExtractPsi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = GridCopula::tabulate(uniform_knots(n), [](double x, double y) { return x * y; });
  for (auto _ : state) benchmark::DoNotOptimize(extract_psi(grid, Track::identity()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExtractPsi)->RangeMultiplier(2)->Range(101, 801)->Complexity();

}  // namespace
BENCHMARK_MAIN();
