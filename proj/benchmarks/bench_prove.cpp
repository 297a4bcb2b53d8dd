#include <benchmark/benchmark.h>

#include "tangent/corpus.hpp"

namespace {

using namespace tangent;

void BM_ProveCorpusEntry(benchmark::State& state, const char* id) {
    const CorpusEntry* entry = nullptr;
    for (const auto& e : corpus_entries())
        if (e.id == id) entry = &e;
    for (auto _ : state) benchmark::DoNotOptimize(prove(entry->file.problem));
}
BENCHMARK_CAPTURE(BM_ProveCorpusEntry, ineq2, "baltic2011_ineq2");
BENCHMARK_CAPTURE(BM_ProveCorpusEntry, sample3_split, "sample3");
BENCHMARK_CAPTURE(BM_ProveCorpusEntry, example3_case2, "example3");

void BM_ProveWholeCorpus(benchmark::State& state) {
    for (auto _ : state)
        for (const auto& e : corpus_entries()) benchmark::DoNotOptimize(prove(e.file.problem));
}
BENCHMARK(BM_ProveWholeCorpus)->Unit(benchmark::kMillisecond);

}  // namespace
