// Serial reference vs OpenMP kernels. The second argument selects the backend
// (0 = serial, 1 = OpenMP with all available threads).

#include "rds/analysis.hpp"
#include "rds/ensemble.hpp"
#include "rds/pullback.hpp"

#include <benchmark/benchmark.h>

using namespace rds;

namespace {

ExecPolicy policy_for(const benchmark::State& state) {
    return state.range(1) == 0 ? ExecPolicy::serial() : ExecPolicy::openmp();
}

const RandomMapSystem& sine_system() {
    static const RandomMapSystem sys(LiftMap::sine(0.1));
    return sys;
}

void BM_PullbackMeasure(benchmark::State& state) {
    const NoiseStream omega(1, 2);
    const auto policy = policy_for(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(pullback_measure(sine_system(), omega, 500, static_cast<std::size_t>(state.range(0)), policy));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 500);
}

void BM_SyncMc(benchmark::State& state) {
    const auto pairs = low_discrepancy_pairs(4);
    const SyncOptions opts{.horizon = 2000, .n_samples = static_cast<std::size_t>(state.range(0))};
    const auto policy = policy_for(state);
    for (auto _ : state) benchmark::DoNotOptimize(sync_mc(sine_system(), pairs, opts, 7, policy));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 4 * 2000);
}

void BM_LyapunovMc(benchmark::State& state) {
    const auto policy = policy_for(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(lyapunov_mc(sine_system(), 200, static_cast<std::size_t>(state.range(0)), 7, policy));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 200);
}

void BM_EvolveEnsemble(benchmark::State& state) {
    const NoiseStream omega(3, 4);
    const auto policy = policy_for(state);
    for (auto _ : state) {
        auto ens = TrajectoryEnsemble::equispaced(static_cast<std::size_t>(state.range(0)));
        evolve_ensemble(sine_system(), omega, ens, 200, 50, policy);
        benchmark::DoNotOptimize(ens.points.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 200);
}

} // namespace

BENCHMARK(BM_PullbackMeasure)->ArgsProduct({{1024}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SyncMc)->ArgsProduct({{50}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LyapunovMc)->ArgsProduct({{2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveEnsemble)->ArgsProduct({{4096}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
