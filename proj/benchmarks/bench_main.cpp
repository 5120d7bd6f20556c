#include <random>

#include <benchmark/benchmark.h>

#include "freetwist/amod.hpp"
#include "freetwist/barcx.hpp"
#include "freetwist/f2lin.hpp"
#include "freetwist/zigzag.hpp"

using namespace freetwist;

namespace {

F2Matrix random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    F2Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (rng() & 1) m.set(r, c);
    return m;
}

void BM_Rank(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNCubed);

void BM_BarRank(benchmark::State& state) {
    const auto m = amod::canonical(Barcode{2, {2, 5}}, amod::Side::Right);
    const auto n = amod::canonical(Barcode{0, {2, 3, 5}}, amod::Side::Left);
    const auto len = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(barcx::bar_rank(m, n, len));
}
BENCHMARK(BM_BarRank)->DenseRange(2, 8, 2);

void BM_Classify(benchmark::State& state) {
    const auto m = amod::canonical(Barcode{2, {1, 3, 4}}, amod::Side::Right);
    for (auto _ : state) benchmark::DoNotOptimize(amod::classify(m));
}
BENCHMARK(BM_Classify);

void BM_Sphere(benchmark::State& state) {
    const auto cat = zigzag::zigzag(3);
    const auto spec = zigzag::parse_sphere("t2 t3^2 t2^2 t3^2 t2 @1");
    for (auto _ : state) benchmark::DoNotOptimize(zigzag::sphere(cat, spec));
}
BENCHMARK(BM_Sphere);

void BM_HfAlternating(benchmark::State& state) {
    const auto cat = zigzag::zigzag(2);
    zigzag::BraidWord w;
    for (int i = 0; i < state.range(0); ++i) w.letters.emplace_back(1 + (i % 2), 1);
    const auto x = zigzag::sphere(cat, w, 1);
    const auto p = tw::TwObject::plain(cat, 0);
    for (auto _ : state) benchmark::DoNotOptimize(tw::hf(p, x));
    state.counters["summands"] = static_cast<double>(x.summands.size());
}
BENCHMARK(BM_HfAlternating)->DenseRange(2, 10, 2);

} // namespace

BENCHMARK_MAIN();
