#include <benchmark/benchmark.h>

#include "lfi/discrepancy.hpp"

namespace {

void BM_DeltaTheta(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const lfi::GaussianMeanSimulator sim;
    const auto observed = lfi::observed_data(n, lfi::kCanonicalObservedSeed);
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            lfi::delta_theta(lfi::ParameterPoint{0.5}, sim, observed, n, {}, lfi::RngSeed{i++, 0}).value);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_DeltaTheta)->Arg(50)->Arg(1000)->Arg(10000);

void BM_SimulateGaussian(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfi::simulate_gaussian(lfi::ParameterPoint{0.0}, n, lfi::RngSeed{i++, 0}));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * state.range(0)));
}
BENCHMARK(BM_SimulateGaussian)->Arg(50)->Arg(10000);

}  // namespace
