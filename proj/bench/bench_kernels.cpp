// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "cubalg/algebra/spec.hpp"
#include "cubalg/schrodinger/numeric.hpp"
#include "cubalg/spectrum/catalog.hpp"
#include "cubalg/weylop/q5.hpp"

using namespace cubalg;

namespace {

const Q5Operators& q5() {
    static const Q5Operators q = build_q5_verified();
    return q;
}

void BM_ComposeSerial(benchmark::State& state) {
    const auto& q = q5();
    for (auto _ : state) benchmark::DoNotOptimize(compose_serial(q.B, q.C));
}

void BM_ComposeParallel(benchmark::State& state) {
    const auto& q = q5();
    for (auto _ : state) benchmark::DoNotOptimize(compose(q.B, q.C));
}

std::vector<SpectrumFamily> families() {
    static const Catalog c = enumerate_catalog(q5_spec(), 0);
    return c.families;
}

void BM_UnitaritySerial(benchmark::State& state) {
    auto fams = families();
    for (auto _ : state) {
        unitarity_filter_all_serial(fams, static_cast<int>(state.range(0)));
        benchmark::ClobberMemory();
    }
}

void BM_UnitarityParallel(benchmark::State& state) {
    auto fams = families();
    for (auto _ : state) {
        unitarity_filter_all(fams, static_cast<int>(state.range(0)));
        benchmark::ClobberMemory();
    }
}

TridiagMatrix well(int n) {
    auto V = [](double x) { return x * x / 8 + 1 / ((x - 1) * (x - 1)) + 1 / ((x + 1) * (x + 1)); };
    return discretize(V, Grid1D{-1, 1, n});
}

void BM_EigenSerial(benchmark::State& state) {
    TridiagMatrix t = well(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenvalues_serial(t, 8, 1e-10));
}

void BM_EigenParallel(benchmark::State& state) {
    TridiagMatrix t = well(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenvalues(t, 8, 1e-10));
}

}  // namespace

BENCHMARK(BM_ComposeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComposeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnitaritySerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnitarityParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenParallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
