// Microbenchmarks for the hot paths: path enumeration, LP assembly, the
// exact and floating-point solvers, and the discretization pipeline.
// Run with --benchmark_filter=<regex> to narrow the set.

#include <benchmark/benchmark.h>

#include "geuler/euler.hpp"
#include "geuler/lp.hpp"
#include "geuler/render.hpp"

using namespace geuler;

namespace {

void BM_EnumeratePaths(benchmark::State& state) {
  const SpatialGrid grid = three_point_grid();
  const auto steps = static_cast<std::size_t>(state.range(0));
  const EndpointMap flip = flip_map(grid);
  const TimeGrid timegrid = TimeGrid::unit_steps(steps);
  for (auto _ : state) {
    auto paths = enumerate_paths(grid, timegrid, &flip);
    benchmark::DoNotOptimize(paths);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(state.range(0)));
}
BENCHMARK(BM_EnumeratePaths)->Arg(4)->Arg(6)->Arg(8);

template <class S>
void BM_AssembleReduced(benchmark::State& state) {
  const SpatialGrid grid = three_point_grid();
  const EndpointMap flip = flip_map(grid);
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto lp = assemble_mmot_lp<S>(grid, TimeGrid::unit_steps(steps), flip,
                                  CostSpec{CostKind::kReducedAction, {}}, PlanForm::kReduced);
    benchmark::DoNotOptimize(lp);
  }
}
BENCHMARK_TEMPLATE(BM_AssembleReduced, Rat)->Arg(4)->Arg(6);
BENCHMARK_TEMPLATE(BM_AssembleReduced, double)->Arg(4)->Arg(6)->Arg(8);

template <class S>
void BM_SolveReduced(benchmark::State& state) {
  const SpatialGrid grid = three_point_grid();
  const EndpointMap flip = flip_map(grid);
  const auto steps = static_cast<std::size_t>(state.range(0));
  const auto lp = assemble_mmot_lp<S>(grid, TimeGrid::unit_steps(steps), flip,
                                      CostSpec{CostKind::kReducedAction, {}}, PlanForm::kReduced);
  for (auto _ : state) {
    auto solution = solve_mmot(lp);
    benchmark::DoNotOptimize(solution);
  }
}
BENCHMARK_TEMPLATE(BM_SolveReduced, Rat)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_SolveReduced, double)
    ->Arg(4)
    ->Arg(5)
    ->Arg(6)
    ->Unit(benchmark::kMillisecond);

void BM_ClosedFormPlan(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto plan = split_optimizer_plan(steps);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_ClosedFormPlan)->Arg(4)->Arg(16)->Arg(64);

void BM_BranchingDiscretization(benchmark::State& state) {
  const auto cells = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto disc = discretized_branching_plan(cells, BranchComponent::kMixture);
    benchmark::DoNotOptimize(disc);
  }
}
BENCHMARK(BM_BranchingDiscretization)->Arg(8)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_RenderSvg(benchmark::State& state) {
  const auto plan = split_optimizer_plan(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto svg = render_svg(plan);
    benchmark::DoNotOptimize(svg);
  }
}
BENCHMARK(BM_RenderSvg)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
