#include <benchmark/benchmark.h>

#include "freefield/longrange.hpp"

using namespace freefield;

namespace {

void BM_CovEntryDiagonal(benchmark::State& state) {
    MassCovariance cov(1.0);
    ProbeFamily fam(1.0, 1.0, 1, 4);
    for (auto _ : state) {
        double v = covariance_entry(cov, fam, 1, 1);
        benchmark::DoNotOptimize(v);
    }
}

void BM_CovEntryOffDiagonal(benchmark::State& state) {
    MassCovariance cov(1.0);
    ProbeFamily fam(1.0, 1.0, 1, 8);
    for (auto _ : state) {
        double v = covariance_entry(cov, fam, 1, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(v);
    }
}

void BM_BuildCovMatrix(benchmark::State& state) {
    MassCovariance cov(1.0);
    ProbeFamily fam(1.0, 1.0, 1, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        CovMatrix M = build_cov_matrix(cov, fam);
        benchmark::DoNotOptimize(M.entries.data());
    }
}

void BM_EnvelopeProbability(benchmark::State& state) {
    EnvelopeParams p{0.25, 1.0, 100};
    for (auto _ : state) {
        double v = envelope_probability(p, 100, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(v);
    }
}

BENCHMARK(BM_CovEntryDiagonal);
BENCHMARK(BM_CovEntryOffDiagonal)->Arg(2)->Arg(5);
BENCHMARK(BM_BuildCovMatrix)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnvelopeProbability)->Arg(10000)->Arg(1000000);

} // namespace
