#include "baen/crossval.hpp"
#include "baen/data.hpp"
#include "baen/kernel.hpp"
#include "baen/trainer.hpp"

#include <benchmark/benchmark.h>

namespace {

baen::Dataset sample(int n_per_class)
{
    return baen::make_gaussian_twoclass(n_per_class, Eigen::VectorXd::Constant(8, 1.0),
                                        Eigen::VectorXd::Constant(8, -1.0), 7);
}

void BM_GramParallel(benchmark::State& state)
{
    const auto ds = sample(static_cast<int>(state.range(0)));
    const auto k = baen::KernelSpec::rbf(0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(baen::gram_matrix(ds.X, k));
}

void BM_GramSerial(benchmark::State& state)
{
    const auto ds = sample(static_cast<int>(state.range(0)));
    const auto k = baen::KernelSpec::rbf(0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(baen::gram_matrix_serial(ds.X, k));
}

baen::Model trained(int n)
{
    const auto ds = sample(n);
    baen::TrainConfig cfg;
    cfg.kernel = baen::KernelSpec::rbf(0.5);
    return baen::fit(ds.X, ds.y, cfg);
}

void BM_DecisionParallel(benchmark::State& state)
{
    const auto model = trained(100);
    const auto test = sample(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(baen::decision_values(model, test.X));
}

void BM_DecisionSerial(benchmark::State& state)
{
    const auto model = trained(100);
    const auto test = sample(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(baen::decision_values_serial(model, test.X));
}

baen::GridSpec tiny_grid()
{
    baen::GridSpec g;
    g.C = {0.5, 2.0};
    g.eta = {1.0};
    g.tau = {0.0, 0.5};
    g.p = {0.5};
    g.sigma = {1.0};
    return g;
}

void BM_GridParallel(benchmark::State& state)
{
    const auto ds = sample(40);
    const auto plan = baen::stratified_kfold(ds, 5, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(baen::grid_search(ds, tiny_grid(), baen::TrainConfig{}, "baen", plan));
}

void BM_GridSerial(benchmark::State& state)
{
    const auto ds = sample(40);
    const auto plan = baen::stratified_kfold(ds, 5, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(baen::grid_search_serial(ds, tiny_grid(), baen::TrainConfig{}, "baen", plan));
}

} // namespace

BENCHMARK(BM_GramParallel)->Arg(200)->Arg(800);
BENCHMARK(BM_GramSerial)->Arg(200)->Arg(800);
BENCHMARK(BM_DecisionParallel)->Arg(1000);
BENCHMARK(BM_DecisionSerial)->Arg(1000);
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
