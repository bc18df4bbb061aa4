#include <benchmark/benchmark.h>

#include "dlab/coefficients.hpp"
#include "dlab/equation.hpp"
#include "dlab/forms.hpp"
#include "dlab/mat2.hpp"
#include "dlab/mode.hpp"
#include "dlab/rng.hpp"
#include "dlab/state.hpp"

using namespace dlab;

namespace {

EquationSpec mixed_example() {
    const cplx I{0.0, 1.0};
    return make_spec(2, {{}, {}, I}, {cplx{1.0, 0.0}, -I});
}

void BM_MatExpMildSpread(benchmark::State& state) {
    const Mat2 a{cplx{0.3, 2.0}, cplx{0.1, -0.4}, cplx{-0.2, 0.7}, cplx{-0.5, 1.1}};
    for (auto _ : state) benchmark::DoNotOptimize(mat_exp_2x2(a));
}
BENCHMARK(BM_MatExpMildSpread);

void BM_MatExpWideSpread(benchmark::State& state) {
    const Mat2 a{cplx{-60.0, 2.0}, cplx{0.1, -0.4}, cplx{-0.2, 0.7}, cplx{55.0, 1.1}};
    for (auto _ : state) benchmark::DoNotOptimize(mat_exp_2x2(a));
}
BENCHMARK(BM_MatExpWideSpread);

void BM_EvolveMode(benchmark::State& state) {
    SplitMix64 rng{7u};
    const auto s = random_spec(3, rng);
    const ModePair p{8.0, cplx{0.6, -0.2}, cplx{0.1, 0.9}};
    for (auto _ : state) benchmark::DoNotOptimize(evolve_mode(s, p, 1e-4));
}
BENCHMARK(BM_EvolveMode);

void BM_EvolveState256(benchmark::State& state) {
    const auto s = mixed_example();
    const auto phi = random_hs_state(256, 0.5, 42u);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_state(s, phi, 0.5));
}
BENCHMARK(BM_EvolveState256);

void BM_MakeTableM6(benchmark::State& state) {
    SplitMix64 rng{11u};
    const auto s = random_spec(6, rng);
    for (auto _ : state) benchmark::DoNotOptimize(make_table(s));
}
BENCHMARK(BM_MakeTableM6);

// quad-precision assembly at the top of the grid dominates verify runtime
void BM_FullResidualXi1024(benchmark::State& state) {
    const auto s = mixed_example();
    const auto table = make_table(s);
    for (auto _ : state) benchmark::DoNotOptimize(full_energy_residual(s, table, 1024.0));
}
BENCHMARK(BM_FullResidualXi1024);

void BM_ResidualScan(benchmark::State& state) {
    const auto s = mixed_example();
    const auto table = make_table(s);
    for (auto _ : state) {
        const auto rep = scan_residual(
            "bench", [&](double xi) { return full_energy_residual(s, table, xi); });
        benchmark::DoNotOptimize(rep.growth_fit);
    }
}
BENCHMARK(BM_ResidualScan);

void BM_SmoothingRateScan(benchmark::State& state) {
    const auto s = mixed_example();
    for (auto _ : state) benchmark::DoNotOptimize(smoothing_rate_scan(s, 64));
}
BENCHMARK(BM_SmoothingRateScan);

} // namespace

BENCHMARK_MAIN();
