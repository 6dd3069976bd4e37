#include <benchmark/benchmark.h>

#include "cubeplan/cube_complex.hpp"
#include "cubeplan/planner.hpp"

using namespace cubeplan;

namespace {

ArmState full_state(ArmKind kind, int n) {
    ArmState s;
    s.n = n;
    for (int i = 1; i <= n; i += kind == ArmKind::Strip ? 2 : 1) s.verticals.push_back(i);
    return s;
}

void BM_explore_quadrant(benchmark::State& state) {
    auto sys = quadrant_system(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(explore(sys).states.size());
}
BENCHMARK(BM_explore_quadrant)->Arg(6)->Arg(9)->Arg(12);

void BM_explore_strip(benchmark::State& state) {
    auto sys = strip_system(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(explore(sys).states.size());
}
BENCHMARK(BM_explore_strip)->Arg(10)->Arg(14)->Arg(18);

void BM_state_complex(benchmark::State& state) {
    auto sys = quadrant_system(int(state.range(0)));
    auto ex = explore(sys);
    for (auto _ : state) benchmark::DoNotOptimize(state_complex(sys, ex).cubes.size());
}
BENCHMARK(BM_state_complex)->Arg(5)->Arg(7)->Arg(9);

void BM_consistent_ideals(benchmark::State& state) {
    Pip p = qp_pip(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(consistent_ideals(p).size());
}
BENCHMARK(BM_consistent_ideals)->Arg(6)->Arg(9)->Arg(12);

void BM_complex_from_pip(benchmark::State& state) {
    Pip p = qp_pip(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(complex_from_pip(p).complex.cubes.size());
}
BENCHMARK(BM_complex_from_pip)->Arg(5)->Arg(7)->Arg(9);

void BM_reconstruct_pip(benchmark::State& state) {
    auto pc = complex_from_pip(qp_pip(int(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_pip(pc.complex).ok());
}
BENCHMARK(BM_reconstruct_pip)->Arg(4)->Arg(6)->Arg(8);

void BM_rooted_isomorphic(benchmark::State& state) {
    const int n = int(state.range(0));
    auto robot = state_complex(quadrant_system(n));
    auto pip_side = complex_from_pip(qp_pip(n)).complex;
    for (auto _ : state) benchmark::DoNotOptimize(rooted_isomorphic(robot, pip_side).has_value());
}
BENCHMARK(BM_rooted_isomorphic)->Arg(4)->Arg(6)->Arg(8);

void BM_plan_steps(benchmark::State& state) {
    const int n = int(state.range(0));
    ArmState from{n, {n}};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            plan_arm(ArmKind::Quadrant, n, from, full_state(ArmKind::Quadrant, n), Metric::Steps)
                .length());
}
BENCHMARK(BM_plan_steps)->Arg(6)->Arg(9)->Arg(12);

void BM_series_coefficients(benchmark::State& state) {
    const int n = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(cube_counts_by_series(n, ArmKind::Strip).size());
}
BENCHMARK(BM_series_coefficients)->Arg(12)->Arg(24)->Arg(48);

}  // namespace

BENCHMARK_MAIN();
