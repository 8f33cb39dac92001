#include <benchmark/benchmark.h>

#include "qwk/qdrw.hpp"
#include "qwk/qwitt_presented.hpp"
#include "qwk/rng.hpp"

using namespace qwk;

static void BM_SnfRandom12x12(benchmark::State& state) {
    Rng rng(1);
    IntMat a(12, 12);
    for (size_t i = 0; i < 12; ++i)
        for (size_t j = 0; j < 12; ++j) a.at(i, j) = rng.int_range(-99, 99);
    for (auto _ : state) {
        SnfData s = snf(a);
        benchmark::DoNotOptimize(s.rank);
    }
}
BENCHMARK(BM_SnfRandom12x12);

static void BM_WittMulZ4(benchmark::State& state) {
    Ring z4(RingSpec::zmod(4));
    long m = state.range(0);
    WittOps w(z4, m);
    Rng rng(7);
    std::vector<QPoly> ca, cb;
    for (size_t i = 0; i < w.trunc().size(); ++i) {
        ca.push_back(z4.from_int(rng.int_range(0, 3)));
        cb.push_back(z4.from_int(rng.int_range(0, 3)));
    }
    WittVec x = w.from_coords(ca), y = w.from_coords(cb);
    for (auto _ : state) {
        WittVec z = w.mul(x, y);
        benchmark::DoNotOptimize(z.coords);
    }
}
BENCHMARK(BM_WittMulZ4)->Arg(6)->Arg(12);

static void BM_PresentationBuild(benchmark::State& state) {
    Ring z4(RingSpec::zmod(4));
    long m = state.range(0);
    for (auto _ : state) {
        QwFamily fam(z4, m);
        benchmark::DoNotOptimize(fam.at(m).order());
    }
}
BENCHMARK(BM_PresentationBuild)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_MultidegreeCohomology(benchmark::State& state) {
    for (auto _ : state) {
        KoszulScalarComplex cx = multidegree_complex(6, {4, 6});
        auto h1 = cohomology(cx, 1);
        benchmark::DoNotOptimize(h1.ngens);
    }
}
BENCHMARK(BM_MultidegreeCohomology)->Unit(benchmark::kMicrosecond);

static void BM_Thm52Cells(benchmark::State& state) {
    for (auto _ : state) {
        auto cells = suite_thm52(6, 8, 8);
        benchmark::DoNotOptimize(cells.size());
    }
}
BENCHMARK(BM_Thm52Cells)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
