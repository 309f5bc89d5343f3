#include <benchmark/benchmark.h>

#include "fermat3p/matgroup.hpp"

using namespace fermat3p;

static void BM_BuildSl23(benchmark::State& state) {
    const auto p = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_sl23(p));
    }
}
BENCHMARK(BM_BuildSl23)->Arg(5)->Arg(97)->Arg(997);

static void BM_VerifyNormalizerLemma(benchmark::State& state) {
    const auto p = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_normalizer_lemma(p));
    }
}
BENCHMARK(BM_VerifyNormalizerLemma)->Arg(5)->Arg(97)->Arg(997);

static void BM_NormalizerBruteforce(benchmark::State& state) {
    const auto p = static_cast<std::uint32_t>(state.range(0));
    MatGroup h = build_sl23(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalizer_bruteforce(h, p));
    }
}
BENCHMARK(BM_NormalizerBruteforce)->Arg(7)->Arg(13)->Arg(31)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
