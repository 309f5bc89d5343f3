#include <benchmark/benchmark.h>

#include "fermat3p/fermatchain.hpp"
#include "fermat3p/ffcurve.hpp"

using namespace fermat3p;

static void BM_WeilPairing(benchmark::State& state) {
    TorsionBasis basis = torsion_basis(supersingular_f4_curve(), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weil_pairing(basis.P, basis.Q, 3));
    }
}
BENCHMARK(BM_WeilPairing);

static void BM_TorsionBasisF16(benchmark::State& state) {
    auto e = FqCurve::make(FqContext::standard(2, 4), 0, 0, 1, 1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(torsion_basis(e, 5));
    }
}
BENCHMARK(BM_TorsionBasisF16);

static void BM_ValuationChain(benchmark::State& state) {
    FreyInstance inst = frey_curve(2, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(valuation_chain(inst));
    }
}
BENCHMARK(BM_ValuationChain);

static void BM_ObstructionVerdict(benchmark::State& state) {
    reference_curve_data(); // warm the fixture
    for (auto _ : state) {
        benchmark::DoNotOptimize(obstruction_verdict(9973));
    }
}
BENCHMARK(BM_ObstructionVerdict);

static void BM_ClassifyRange(benchmark::State& state) {
    reference_curve_data();
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_range(17, state.range(0)));
    }
}
BENCHMARK(BM_ClassifyRange)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
