#include <benchmark/benchmark.h>

#include "lfi/hyperparams.hpp"

namespace {

struct Problem {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    lfi::KernelHyper hyper;
};

Problem make_problem(Eigen::Index k) {
    lfi::Rng rng(lfi::RngSeed{7, 0});
    Problem p;
    p.x.resize(k, 1);
    p.y.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        p.x(i, 0) = rng.uniform(-10.0, 10.0);
        p.y[i] = 0.5 + 0.5 * (1.0 - std::exp(-0.1 * p.x(i, 0) * p.x(i, 0))) + 0.03 * rng.normal();
    }
    p.hyper.signal_variance = 0.1;
    p.hyper.lengthscales = Eigen::VectorXd::Constant(1, 2.0);
    p.hyper.noise_variance = 1e-3;
    p.hyper.prior_mean = 0.5;
    return p;
}

void BM_GpFit(benchmark::State& state) {
    const auto p = make_problem(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lfi::gp_fit(p.x, p.y, p.hyper));
}
BENCHMARK(BM_GpFit)->Arg(5)->Arg(20)->Arg(100);

void BM_GpPredict(benchmark::State& state) {
    const auto p = make_problem(state.range(0));
    const auto model = lfi::gp_fit(p.x, p.y, p.hyper);
    double t = -10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfi::gp_predict(model, lfi::ParameterPoint{t}));
        t = t > 10.0 ? -10.0 : t + 0.01;
    }
}
BENCHMARK(BM_GpPredict)->Arg(5)->Arg(20)->Arg(100);

void BM_GpExtend(benchmark::State& state) {
    const auto p = make_problem(state.range(0) + 1);
    const auto model = lfi::gp_fit(p.x.topRows(state.range(0)), p.y.head(state.range(0)), p.hyper);
    const lfi::ParameterPoint next{p.x(state.range(0), 0)};
    for (auto _ : state) benchmark::DoNotOptimize(model.extended(next, p.y[state.range(0)]));
}
BENCHMARK(BM_GpExtend)->Arg(20)->Arg(100);

void BM_OptimizeHyperparams(benchmark::State& state) {
    const auto p = make_problem(state.range(0));
    lfi::HyperSearch search;
    search.defaults = p.hyper;
    for (auto _ : state) benchmark::DoNotOptimize(lfi::optimize_hyperparams(p.x, p.y, search));
}
BENCHMARK(BM_OptimizeHyperparams)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
