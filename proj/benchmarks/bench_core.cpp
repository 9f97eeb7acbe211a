// Microbenchmarks for the numerical kernels: the closed-form steady state,
// the slice integrator building blocks, and the full propagation solver on a
// coarse and a mid-sized grid. The default experiment grid (n_z = 200,
// ~80k time samples) costs a few seconds per run and is deliberately not
// benchmarked here; scale the propagation numbers by slices x steps instead.

#include <benchmark/benchmark.h>

#include "fwm/bloch.hpp"
#include "fwm/propagation.hpp"
#include "fwm/pulse.hpp"
#include "fwm/steady_state.hpp"

namespace {

using namespace fwm;

SystemParams reference_params() {
    SystemParams p;
    p.omega_c = 0.32;
    p.delta = 13.0;
    p.gamma21 = 9e-4;
    p.gamma31 = 1.25;
    p.gamma41 = 1.25;
    p.alpha = 42.0;
    return p;
}

PulseSpec square(double peak, double duration, double edge = 10.0) {
    PulseSpec s;
    s.shape = PulseShape::square_smooth;
    s.peak_rabi = peak;
    s.duration = duration;
    s.edge_time = edge;
    return s;
}

void BM_SteadyStateClosedForm(benchmark::State& state) {
    SteadyStateInputs in;
    in.omega_c = 0.32;
    in.omega_d = 0.32;
    in.delta = 13.0;
    in.gamma31 = 1.25;
    in.alpha = 42.0;
    for (auto _ : state) {
        in.delta += 1e-12;  // defeat value caching across iterations
        benchmark::DoNotOptimize(steady_state(in));
    }
}
BENCHMARK(BM_SteadyStateClosedForm);

void BM_BlochStep(benchmark::State& state) {
    const SystemParams p = reference_params();
    const DriveFields fields{cplx(0.01, 0.0), cplx(0.0, 0.002), cplx(0.32, 0.0), cplx(0.35, 0.0)};
    CoherenceState s{};
    for (auto _ : state) {
        s = step(s, fields, fields, p, 0.05);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BlochStep);

void BM_SteadyCoherences(benchmark::State& state) {
    SystemParams p = reference_params();
    const DriveFields fields{cplx(0.01, 0.0), cplx(0.0, 0.002), cplx(0.32, 0.0), cplx(0.35, 0.0)};
    for (auto _ : state) {
        p.delta += 1e-12;
        benchmark::DoNotOptimize(steady_coherences(fields, p));
    }
}
BENCHMARK(BM_SteadyCoherences);

// Coarse grid: the configuration used throughout the fast unit tests.
void BM_PropagateCoarse(benchmark::State& state) {
    SystemParams p = reference_params();
    p.alpha = 8.0;
    p.delta = 2.0;
    p.omega_c = 0.5;
    PropagationGrid grid;
    grid.n_z = 16;
    grid.dt = 0.1;
    grid.t_max = 500.0;
    const PulseSpec probe = square(0.01, 300.0);
    const PulseSpec driving = square(0.45, 400.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(probe, driving, p, grid));
    }
    state.SetItemsProcessed(state.iterations() * grid.n_z * 2 *
                            static_cast<long>(grid.t_max / grid.dt));
}
BENCHMARK(BM_PropagateCoarse)->Unit(benchmark::kMillisecond);

// Mid-sized grid: one quarter of the preset experiment in both axes.
void BM_PropagateMedium(benchmark::State& state) {
    const SystemParams p = reference_params();
    PropagationGrid grid;
    grid.n_z = 50;
    grid.dt = 0.1;
    grid.t_max = 2200.0;
    const PulseSpec probe = square(0.074, 1200.0, 18.85);
    const PulseSpec driving = square(0.35, 1500.0, 18.85);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(probe, driving, p, grid));
    }
    state.SetItemsProcessed(state.iterations() * grid.n_z * 2 *
                            static_cast<long>(grid.t_max / grid.dt));
}
BENCHMARK(BM_PropagateMedium)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
