#include <benchmark/benchmark.h>

#include <memory>

#include "gasim/engine.hpp"
#include "gasim/ffm.hpp"
#include "gasim/oracle.hpp"
#include "gasim/presets.hpp"

using namespace gasim;

namespace {

GaConfig bench_config(Preset p, int n, int m) {
    GaConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.k = 100;
    cfg.master_seed = 1;
    cfg.tables = std::make_shared<const FfmTables>(build_preset_tables(p, m));
    cfg.single_variable = preset_single_variable(p);
    return cfg;
}

void BM_StepGeneration(benchmark::State& state) {
    const GaConfig cfg = bench_config(Preset::f3, static_cast<int>(state.range(0)), 20);
    GaState s = init_population(cfg);
    for (auto _ : state) {
        s = step_generation(s, cfg);
        benchmark::DoNotOptimize(s.population.data());
    }
    state.counters["generations_per_s"] =
        benchmark::Counter(static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_StepGeneration)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_FullRun(benchmark::State& state) {
    const GaConfig cfg = bench_config(Preset::f1, 32, 26);
    for (auto _ : state) {
        const RunTrace t = run(cfg);
        benchmark::DoNotOptimize(t.records.data());
    }
    state.counters["generations_per_s"] = benchmark::Counter(
        static_cast<double>(state.iterations() * cfg.k), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_FullRun);

void BM_FfmEvaluate(benchmark::State& state) {
    const auto tables = build_preset_tables(Preset::f3, 20);
    Word x = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ffm_evaluate(x, tables));
        x = (x + 0x9E37u) & 0xFFFFFu;
    }
}
BENCHMARK(BM_FfmEvaluate);

void BM_ExhaustiveOptimum(benchmark::State& state) {
    const auto tables = build_preset_tables(Preset::f2, 16);
    for (auto _ : state) {
        const OptimumReport r = exhaustive_optimum(tables, SelectionMode::minimize, false, 16);
        benchmark::DoNotOptimize(r.best_fitness);
    }
    state.SetItemsProcessed(state.iterations() * (1 << 16));
}
BENCHMARK(BM_ExhaustiveOptimum);

} // namespace

BENCHMARK_MAIN();
