#include <benchmark/benchmark.h>

#include <numbers>

#include "polygpt/coex/coexistence.hpp"
#include "polygpt/gpt/builders.hpp"

using namespace polygpt;
using geom::Vec2;

static void BM_ClipHalfplane(benchmark::State& state) {
    const auto poly = geom::regular_constraint_polygon(
        static_cast<int>(state.range(0)), 0.5, {0, 0});
    const geom::HalfPlane2D hp({0.6, 0.8}, 0.21);
    for (auto _ : state) {
        auto clipped = clip_halfplane(poly, hp);
        benchmark::DoNotOptimize(clipped);
    }
}
BENCHMARK(BM_ClipHalfplane)->Arg(8)->Arg(64)->Arg(256);

static void BM_MinkowskiSum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto p = geom::regular_constraint_polygon(n, 0.4, {0.1, -0.2});
    const auto q = geom::regular_constraint_polygon(n, 0.3, {-0.3, 0.25});
    for (auto _ : state) {
        auto sum = minkowski_sum(p, q);
        benchmark::DoNotOptimize(sum);
    }
}
BENCHMARK(BM_MinkowskiSum)->Arg(8)->Arg(32)->Arg(128);

static void BM_BuildPolygonTheory(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto t = build_regular_polygon_theory(n);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_BuildPolygonTheory)->Arg(6)->Arg(12);

static void BM_CoexistOracle(benchmark::State& state) {
    const Theory t = build_regular_polygon_theory(static_cast<int>(state.range(0)));
    const Effect e({0.21, -0.13, 0.5});
    const Effect f({-0.08, 0.3, 0.5});
    for (auto _ : state) {
        auto v = coexist_oracle(t, e, f);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_CoexistOracle)->Arg(6)->Arg(12);

static void BM_CoexistenceRegion(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Vec2 e{0.2, 0.0};
    for (auto _ : state) {
        auto rep = coexistence_region(n, e);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_CoexistenceRegion)->Arg(8)->Arg(32)->Arg(128);

static void BM_VolumeFractionSamples(benchmark::State& state) {
    const Theory t = build_regular_polygon_theory(6);
    const Effect e({0.5, 0.5 * std::tan(std::numbers::pi / 6), 0.5});
    for (auto _ : state) {
        const double frac =
            coexistence_volume_fraction(t, e, static_cast<int>(state.range(0)), 1234);
        benchmark::DoNotOptimize(frac);
    }
}
BENCHMARK(BM_VolumeFractionSamples)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
