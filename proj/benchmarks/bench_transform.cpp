#include <benchmark/benchmark.h>

#include "freefield/covariance.hpp"
#include "freefield/lattice.hpp"

using namespace freefield;

namespace {

ScalarField ramp_field(const LatticeSpec& spec) {
    ScalarField f(spec);
    for (std::int64_t i = 0; i < spec.sites(); ++i)
        f.values[i] = std::sin(0.01 * i);
    return f;
}

void BM_RoundTrip1d(benchmark::State& state) {
    LatticeSpec spec(1, static_cast<int>(state.range(0)), 0.1);
    ScalarField f = ramp_field(spec);
    for (auto _ : state) {
        ScalarField back = inverse_transform(forward_transform(f));
        benchmark::DoNotOptimize(back.values.data());
    }
    state.SetItemsProcessed(state.iterations() * spec.sites());
}

void BM_RoundTrip3d(benchmark::State& state) {
    LatticeSpec spec(3, static_cast<int>(state.range(0)), 0.2);
    ScalarField f = ramp_field(spec);
    for (auto _ : state) {
        ScalarField back = inverse_transform(forward_transform(f));
        benchmark::DoNotOptimize(back.values.data());
    }
    state.SetItemsProcessed(state.iterations() * spec.sites());
}

void BM_ApplyPower(benchmark::State& state) {
    LatticeSpec spec(1, static_cast<int>(state.range(0)), 0.1);
    MassCovariance cov(1.0);
    ScalarField f = ramp_field(spec);
    for (auto _ : state) {
        ScalarField out = apply_power(cov, f, -0.5);
        benchmark::DoNotOptimize(out.values.data());
    }
}

BENCHMARK(BM_RoundTrip1d)->Arg(128)->Arg(1024)->Arg(8192);
BENCHMARK(BM_RoundTrip3d)->Arg(16)->Arg(32);
BENCHMARK(BM_ApplyPower)->Arg(1024)->Arg(8192);

} // namespace

BENCHMARK_MAIN();
