#include <benchmark/benchmark.h>

#include <random>

#include "prosimpl/homology.hpp"
#include "prosimpl/mapspace.hpp"
#include "prosimpl/subdivision.hpp"

using namespace prosimpl;

static void BM_sd_tower(benchmark::State& state) {
    FinSSet X = complex_to_sset(boundary_complex(2));
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tower(X, k));
}
BENCHMARK(BM_sd_tower)->Arg(1)->Arg(2)->Arg(3);

static void BM_product(benchmark::State& state) {
    FinSSet A = standard_simplex(static_cast<int>(state.range(0)));
    FinSSet B = standard_simplex(1);
    for (auto _ : state) benchmark::DoNotOptimize(product(A, B));
}
BENCHMARK(BM_product)->Arg(1)->Arg(2)->Arg(3);

static void BM_snf_random(benchmark::State& state) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-9, 9);
    const int n = static_cast<int>(state.range(0));
    IMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = entry(rng);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_snf_random)->Arg(4)->Arg(8)->Arg(16);

static void BM_homology_torus(benchmark::State& state) {
    FinSSet T = complex_to_sset(torus_complex());
    for (auto _ : state) benchmark::DoNotOptimize(homology(T));
}
BENCHMARK(BM_homology_torus);

static void BM_function_complex(benchmark::State& state) {
    FinSSet S = circle();
    FinSSet Z = groupoid_nerve(cyclic_group_category(2), 3);
    for (auto _ : state) benchmark::DoNotOptimize(function_complex(S, Z, 2));
}
BENCHMARK(BM_function_complex);

BENCHMARK_MAIN();
