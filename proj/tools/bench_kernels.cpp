// Serial vs OpenMP kernel comparison plus one full split-operator step.
#include <benchmark/benchmark.h>

#include <vector>

#include "qammeter/fft.hpp"
#include "qammeter/grid.hpp"
#include "qammeter/kernels.hpp"
#include "qammeter/potential.hpp"
#include "qammeter/propagator.hpp"
#include "qammeter/rng.hpp"

using namespace qam;

namespace {

std::vector<cplx> random_state(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
    return v;
}

void bm_multiply(benchmark::State& state, Backend backend) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<cplx> a = random_state(n, 1);
    const std::vector<cplx> b = random_state(n, 2);
    for (auto _ : state) {
        kernels::multiply(a.data(), b.data(), n, backend);
        benchmark::DoNotOptimize(a.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void bm_sum_abs2(benchmark::State& state, Backend backend) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<cplx> a = random_state(n, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::sum_abs2(a.data(), n, backend));
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void bm_step(benchmark::State& state, Backend backend) {
    const int n = static_cast<int>(state.range(0));
    const GridPtr grid = make_grid(n, -2834.6, 2834.6);
    DeviceSpec dev;
    dev.barrier_height = 0.0183746;
    dev.barrier_width = 7.559;
    dev.well_width = 7.559;
    dev.device_start = -11.3;
    const PotentialProfile profile = make_double_barrier(grid, dev, 0.0);
    WavepacketSpec spec;
    spec.center = -1000.0;
    spec.sigma_x = 566.9;
    spec.k0 = 0.13555;
    Wavefunction wf = gaussian_packet(grid, spec);
    SplitOperator stepper(grid, 1.0, 1.0, backend);
    double t = 0.0;
    for (auto _ : state) {
        stepper.step(wf, profile, t);
        t += stepper.dt();
        benchmark::DoNotOptimize(wf.psi.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}

} // namespace

BENCHMARK_CAPTURE(bm_multiply, serial, Backend::serial)->Range(1 << 12, 1 << 20);
BENCHMARK_CAPTURE(bm_multiply, openmp, Backend::openmp)->Range(1 << 12, 1 << 20);
BENCHMARK_CAPTURE(bm_sum_abs2, serial, Backend::serial)->Range(1 << 12, 1 << 20);
BENCHMARK_CAPTURE(bm_sum_abs2, openmp, Backend::openmp)->Range(1 << 12, 1 << 20);
BENCHMARK_CAPTURE(bm_step, serial, Backend::serial)->Arg(1 << 12)->Arg(1 << 14);
BENCHMARK_CAPTURE(bm_step, openmp, Backend::openmp)->Arg(1 << 12)->Arg(1 << 14);

BENCHMARK_MAIN();
