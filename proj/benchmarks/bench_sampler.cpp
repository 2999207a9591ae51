#include <benchmark/benchmark.h>

#include "freefield/sampler.hpp"

using namespace freefield;

namespace {

void BM_Sample1d(benchmark::State& state) {
    LatticeSpec spec(1, 128, 0.1);
    MassCovariance cov(1.0);
    const int count = static_cast<int>(state.range(0));
    for (auto _ : state) {
        SampleBatch batch = sample(cov, spec, 1, count, 1);
        benchmark::DoNotOptimize(batch.fields.data());
    }
    state.SetItemsProcessed(state.iterations() * count);
}

void BM_Sample1dParallel(benchmark::State& state) {
    LatticeSpec spec(1, 128, 0.1);
    MassCovariance cov(1.0);
    const int count = 1024;
    for (auto _ : state) {
        SampleBatch batch = sample(cov, spec, 1, count, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(batch.fields.data());
    }
    state.SetItemsProcessed(state.iterations() * count);
}

void BM_Characteristic(benchmark::State& state) {
    LatticeSpec spec(1, 128, 0.1);
    MassCovariance cov(1.0);
    SampleBatch batch = sample(cov, spec, 1, static_cast<int>(state.range(0)));
    ScalarField f(spec);
    for (int i = 0; i < spec.n; ++i)
        f.values[i] = std::exp(-std::pow((i - 64) * spec.a, 2));
    for (auto _ : state) {
        McEstimate est = characteristic_mc(batch, f);
        benchmark::DoNotOptimize(est);
    }
}

BENCHMARK(BM_Sample1d)->Arg(64)->Arg(512);
BENCHMARK(BM_Sample1dParallel)->Arg(1)->Arg(2)->Arg(4);
BENCHMARK(BM_Characteristic)->Arg(1000)->Arg(10000);

} // namespace
