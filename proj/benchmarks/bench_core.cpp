#include <benchmark/benchmark.h>

#include "bergman/counterexample.hpp"
#include "bergman/dbar.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;

static void BM_LogRealAccumulate(benchmark::State& state) {
    std::vector<LogReal> terms;
    for (int k = 0; k < 4096; ++k)
        terms.push_back(LogReal::from_log(+1, -0.37 * k + 200.0));
    for (auto _ : state) {
        LogReal sum;
        for (const LogReal& t : terms) sum += t;
        benchmark::DoNotOptimize(sum);
    }
}
BENCHMARK(BM_LogRealAccumulate);

static void BM_MonomialNormLimitWeight(benchmark::State& state) {
    WeightSequence seq = counterexample::build_weights(1, 12);
    int k = static_cast<int>(state.range(0));
    MultiIndex alpha = MultiIndex::first_variable(1, k);
    for (auto _ : state) {
        auto v = quad::monomial_norm(seq.limit, alpha, quad::Region::whole());
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_MonomialNormLimitWeight)->Arg(2)->Arg(6)->Arg(12);

static void BM_BuildWeights(benchmark::State& state) {
    for (auto _ : state) {
        WeightSequence seq = counterexample::build_weights(1, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(seq);
    }
}
BENCHMARK(BM_BuildWeights)->Arg(4)->Arg(8)->Arg(12);

static void BM_BuildInstance(benchmark::State& state) {
    for (auto _ : state) {
        auto inst = counterexample::build_instance(1, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(inst);
    }
}
BENCHMARK(BM_BuildInstance)->Arg(6)->Arg(12);

static void BM_MinimalSolution(benchmark::State& state) {
    WeightSequence seq = counterexample::build_weights(1, 6);
    RadialWeight tilted(seq.weights[2].profile.with_term(tilt_term(1.0)), 1);
    ModeSeries f(1);
    f.set_first_variable(1, LogReal::one());
    f.set_first_variable(2, LogReal::from_double(0.5));
    dbar::CutoffProfile cutoff = dbar::build_cutoff(3, 1.0);
    for (auto _ : state) {
        auto sol = dbar::minimal_solution(f, tilted, cutoff);
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(BM_MinimalSolution);

static void BM_CutoffEvaluation(benchmark::State& state) {
    dbar::CutoffProfile cutoff = dbar::build_cutoff(3, 1.0);
    for (auto _ : state) {
        double sum = 0;
        for (int i = 0; i < 1024; ++i) {
            double t = cutoff.t_half + (cutoff.t_full - cutoff.t_half) * i / 1023.0;
            sum += cutoff.value(t);
        }
        benchmark::DoNotOptimize(sum);
    }
}
BENCHMARK(BM_CutoffEvaluation);

BENCHMARK_MAIN();
