#include <benchmark/benchmark.h>

#include "pathlab/classical_path.hpp"
#include "pathlab/transition.hpp"

using namespace pathlab;

namespace {

const PhysicalConstants kUnits;

void BM_LatticeKernel(benchmark::State& state) {
    const auto n_points = static_cast<std::size_t>(state.range(0));
    const auto n_slices = static_cast<std::size_t>(state.range(1));
    const SpaceGrid sg = build_space_grid(-8.0, 8.0, n_points);
    const TimeGrid tg = build_time_grid(0.0, 1.0, n_slices);
    const Potential pot = Potential::harmonic(1.0, kUnits);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice_kernel(sg, tg, pot, kUnits));
    }
}
BENCHMARK(BM_LatticeKernel)
    ->Args({201, 16})
    ->Args({401, 32})
    ->Args({801, 32})
    ->Unit(benchmark::kMillisecond);

void BM_TransitionSweep(benchmark::State& state) {
    const auto n_points = static_cast<std::size_t>(state.range(0));
    const SpaceGrid sg = build_space_grid(-8.0, 8.0, n_points);
    const TimeGrid tg = build_time_grid(0.0, 1.0, 32);
    const Potential pot = Potential::harmonic(1.0, kUnits);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            transition_coordinate_path(0.0, 1.0, sg, tg, pot, kUnits));
    }
}
BENCHMARK(BM_TransitionSweep)->Arg(161)->Arg(401)->Arg(801)->Unit(benchmark::kMillisecond);

void BM_BruteForceKernel(benchmark::State& state) {
    const SpaceGrid sg = build_space_grid(-1.0, 1.0, static_cast<std::size_t>(state.range(0)));
    const TimeGrid tg = build_time_grid(0.0, 1.0, static_cast<std::size_t>(state.range(1)));
    const Potential pot = Potential::polynomial({0, 0, 0, 0, 0.1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_kernel(sg, tg, pot, kUnits, -1.0, 1.0));
    }
}
BENCHMARK(BM_BruteForceKernel)->Args({5, 4})->Args({7, 5})->Args({9, 6});

void BM_ClassicalPathSolve(benchmark::State& state) {
    const TimeGrid tg = build_time_grid(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
    const Potential pot = Potential::polynomial({0, 0, 0, 0, 0.1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_classical_path(0.0, 1.0, tg, pot, kUnits));
    }
}
BENCHMARK(BM_ClassicalPathSolve)->Arg(32)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
