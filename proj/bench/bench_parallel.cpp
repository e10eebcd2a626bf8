// Serial census against the job-parallel runner on the same configuration.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "linkcensus/search.hpp"

using namespace linkcensus;

namespace {

SearchConfig config_for(const benchmark::State& state) {
    SearchConfig c;
    c.size = static_cast<int>(state.range(0));
    c.mode = Mode::all;
    c.pruning = 2;
    return c;
}

void BM_SerialCensus(benchmark::State& state) {
    const SearchConfig c = config_for(state);
    for (auto _ : state) {
        auto r = enumerate(c);
        benchmark::DoNotOptimize(r.total());
        state.counters["nodes"] = static_cast<double>(r.stats().nodes);
    }
}

void BM_ParallelCensus(benchmark::State& state) {
    const SearchConfig c = config_for(state);
    const int threads = omp_get_max_threads();
    for (auto _ : state) {
        auto r = enumerate_parallel(c, 2, threads);
        benchmark::DoNotOptimize(r.total());
        state.counters["nodes"] = static_cast<double>(r.stats().nodes);
    }
    state.counters["threads"] = threads;
}

}  // namespace

BENCHMARK(BM_SerialCensus)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelCensus)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
