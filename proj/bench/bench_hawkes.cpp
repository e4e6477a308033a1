// Serial reference vs OpenMP paths for the likelihood and the study loop.

#include "hawkes/experiments.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace hawkes;

namespace {

EventSequence bench_sequence(double horizon) {
    return simulate_ogata({benchmark_generator(Family::exp), horizon, 12345});
}

void BM_LoglikSerialReference(benchmark::State& state) {
    const EventSequence seq = bench_sequence(static_cast<double>(state.range(0)));
    const HawkesModel model{0.4, PowerLawKernel{0.5, 1.0, 2.0}};
    for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(model, seq).total);
    state.counters["events"] = static_cast<double>(seq.size());
}

void BM_LoglikParallel(benchmark::State& state) {
    const EventSequence seq = bench_sequence(static_cast<double>(state.range(0)));
    const HawkesModel model{0.4, PowerLawKernel{0.5, 1.0, 2.0}};
    const WindowLikelihood objective(seq, 0.0, seq.horizon());
    for (auto _ : state) benchmark::DoNotOptimize(objective(model).total);
    state.counters["events"] = static_cast<double>(seq.size());
}

StudyConfig small_study(int jobs) {
    StudyConfig config;
    config.generator_families = {Family::exp, Family::ray};
    config.fitter_families = {Family::exp, Family::gss};
    config.horizons = {50.0};
    config.sequences_per_cell = 4;
    config.jobs = jobs;
    return config;
}

void BM_StudySerial(benchmark::State& state) {
    const StudyConfig config = small_study(1);
    for (auto _ : state) benchmark::DoNotOptimize(run_success_rate_study(config).records.size());
}

void BM_StudyParallel(benchmark::State& state) {
    const StudyConfig config = small_study(0);
    for (auto _ : state) benchmark::DoNotOptimize(run_success_rate_study(config).records.size());
}

} // namespace

BENCHMARK(BM_LoglikSerialReference)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LoglikParallel)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StudySerial)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK(BM_StudyParallel)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
