#include <benchmark/benchmark.h>

#include "lfi/bayes_opt.hpp"

namespace {

const lfi::Box kBox{{lfi::Interval{-10.0, 10.0}}};

void BM_AcquireNext(benchmark::State& state) {
    lfi::KernelHyper h;
    h.signal_variance = 0.1;
    h.lengthscales = Eigen::VectorXd::Constant(1, 2.0);
    h.noise_variance = 1e-3;
    h.prior_mean = 0.5;
    const auto k = state.range(0);
    Eigen::MatrixXd x(k, 1);
    Eigen::VectorXd y(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        x(i, 0) = -9.0 + 18.0 * static_cast<double>(i) / static_cast<double>(k);
        y[i] = std::min(1.0, 0.5 + 0.05 * x(i, 0) * x(i, 0));
    }
    const auto model = lfi::gp_fit(x, y, h);
    const lfi::AcquisitionConfig config;
    std::size_t step = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfi::acquire_next(model, kBox, config, step++, lfi::RngSeed{1, 0}));
    }
}
BENCHMARK(BM_AcquireNext)->Arg(5)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_BolfiRun(benchmark::State& state) {
    const lfi::GaussianMeanSimulator sim;
    const auto observed = lfi::observed_data(50, lfi::kCanonicalObservedSeed);
    const auto config = lfi::default_bo_config(kBox);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(lfi::bolfi_run(sim, observed, kBox, config, lfi::RngSeed{seed++, 0}));
}
BENCHMARK(BM_BolfiRun)->Unit(benchmark::kMillisecond)->Iterations(5);

}  // namespace
