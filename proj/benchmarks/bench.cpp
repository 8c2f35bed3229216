#include <benchmark/benchmark.h>

#include "pflow/norms.hpp"
#include "pflow/solver.hpp"

namespace {

void bm_fft_roundtrip(benchmark::State& state) {
    const pflow::PeriodicGrid grid{static_cast<int>(state.range(0))};
    pflow::SpectralField f = pflow::SpectralField::scalar_function(
        grid, [](double x, double y) { return std::sin(6.28318530717958648 * (x + 2 * y)); });
    for (auto _ : state) {
        pflow::SpectralField g = pflow::transform(f, pflow::Direction::to_spectral);
        g = pflow::transform(g, pflow::Direction::to_physical);
        benchmark::DoNotOptimize(g.physical(0).front());
    }
}
BENCHMARK(bm_fft_roundtrip)->Arg(64)->Arg(128)->Arg(256);

void bm_luxemburg(benchmark::State& state) {
    const pflow::PeriodicGrid grid{static_cast<int>(state.range(0))};
    pflow::SpectralField f = pflow::SpectralField::scalar_function(
        grid, [](double x, double y) { return 1.0 + std::sin(6.28318530717958648 * x) * y; });
    pflow::SpectralField c = pflow::SpectralField::scalar_function(
        grid, [](double x, double) { return std::cos(6.28318530717958648 * x); });
    const auto p = pflow::ExponentFunction::tanh_law(0.4, 1.0);
    const auto pf = pflow::ExponentField::from_concentration(c, p);
    for (auto _ : state) benchmark::DoNotOptimize(pflow::luxemburg_norm(f, pf));
}
BENCHMARK(bm_luxemburg)->Arg(64)->Arg(128);

void bm_picard_step(benchmark::State& state) {
    pflow::SolverConfig cfg;
    cfg.grid = pflow::PeriodicGrid{static_cast<int>(state.range(0))};
    cfg.n_basis = 24;
    const pflow::GalerkinSolver solver(cfg);
    const pflow::ProblemData data = pflow::standard_problem(cfg.grid);
    const pflow::SolutionState s0 = solver.initial_state();
    for (auto _ : state) {
        pflow::SolutionState s1 = solver.picard_step(s0, data);
        benchmark::DoNotOptimize(s1.alpha.front());
    }
}
BENCHMARK(bm_picard_step)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
