#include <benchmark/benchmark.h>

#include <vector>

#include "goodwin/analysis.hpp"
#include "goodwin/graph.hpp"
#include "goodwin/netsim.hpp"
#include "goodwin/scenario.hpp"

using namespace goodwin;

namespace {

void BM_CouplingInputs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Matrix l = laplacian(CouplingGraph::complete(n, 1.0));
    const Protocol p = Protocol::saturated(100.0, 0.0005, 0.9);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = 0.1 + 0.01 * i;
    for (auto _ : state) {
        benchmark::DoNotOptimize(coupling_inputs(p, l, y));
    }
}
BENCHMARK(BM_CouplingInputs)->Arg(10)->Arg(50);

void BM_NetworkStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CfsModel m = gonze_model();
    const Matrix l = laplacian(CouplingGraph::complete(n, 1.0));
    const Protocol p = Protocol::saturated(100.0, 0.0005, 0.9);
    std::vector<double> x(static_cast<std::size_t>(n) * 3, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rk4_step(m, p, l, x, 0.01));
    }
}
BENCHMARK(BM_NetworkStep)->Arg(10)->Arg(50);

void BM_SimulateHour(benchmark::State& state) {
    SimConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt = 0.01;
    cfg.record_stride = 10;
    const CouplingGraph g = CouplingGraph::complete(10, 1.0);
    const CfsModel m = gonze_model();
    const Protocol p = Protocol::saturated(100.0, 0.0005, 0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(m, p, g, cfg));
    }
}
BENCHMARK(BM_SimulateHour);

void BM_Lambda2(benchmark::State& state) {
    const CouplingGraph g = CouplingGraph::complete(static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda2(g));
    }
}
BENCHMARK(BM_Lambda2)->Arg(10)->Arg(30);

void BM_SecantGains(benchmark::State& state) {
    const CfsModel m = model_preset("linear-goodwin");
    const std::vector<double> bounds{1.85, 1.85, 1.85};
    for (auto _ : state) {
        benchmark::DoNotOptimize(secant_gains(m, bounds, 1.85e-6));
    }
}
BENCHMARK(BM_SecantGains);

void BM_MinCouplingGain(benchmark::State& state) {
    const KineticFunction g0(SaturatingCoupling{0.3, 0.9});
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_coupling_gain(0.0067, 4.0, 6.0, 1.85, g0));
    }
}
BENCHMARK(BM_MinCouplingGain);

}  // namespace

BENCHMARK_MAIN();
