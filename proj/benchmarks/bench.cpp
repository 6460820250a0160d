#include <benchmark/benchmark.h>

#include "ppform/criteria.hpp"
#include "ppform/rng.hpp"

using namespace ppform;

namespace {

const FieldCtx& field(int m, int n) {
    static FieldCtx f8(FieldSpec{1, 3, {}});
    static FieldCtx f64(FieldSpec{2, 3, {}});
    static FieldCtx f1m(FieldSpec{4, 5, {}});  // 2^20, table-backed upper end
    if (m == 1 && n == 3) return f8;
    if (m == 2 && n == 3) return f64;
    return f1m;
}

void BM_field_mul(benchmark::State& state) {
    const FieldCtx& f = field(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    CounterRng rng(1, 0);
    Elt x = rng.next_nonzero(f), y = rng.next_nonzero(f);
    for (auto _ : state) {
        x = f.mul(x, y);
        benchmark::DoNotOptimize(x);
        if (x == 0) x = 1;
    }
}
BENCHMARK(BM_field_mul)->Args({1, 3})->Args({2, 3})->Args({4, 5});

void BM_frobenius(benchmark::State& state) {
    const FieldCtx& f = field(2, 3);
    Elt x = 0x2b;
    for (auto _ : state) {
        x = f.frobenius(x, 3) | 1;
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_frobenius);

void BM_weil_direct(benchmark::State& state) {
    const FieldCtx& f = field(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(weil_direct(f, 3, 5).value);
}
BENCHMARK(BM_weil_direct)->Args({1, 3})->Args({2, 3});

void BM_weil_closed(benchmark::State& state) {
    const FieldCtx& f = field(2, 3);
    for (auto _ : state) benchmark::DoNotOptimize(weil_closed(f, 3, 5).value);
}
BENCHMARK(BM_weil_closed);

void BM_oracle_census(benchmark::State& state) {
    const FieldCtx& f = field(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    LinPoly L({{0, 1}, {1, 3}}, f.mn());
    for (auto _ : state) benchmark::DoNotOptimize(oracle_profile(f, 1, L).is_N_to_1);
}
BENCHMARK(BM_oracle_census)->Args({1, 3})->Args({2, 3});

void BM_pp_odd(benchmark::State& state) {
    const FieldCtx& f = field(2, 3);
    LinPoly L = LinPoly::monomial(0x3a, 1, 6);
    for (auto _ : state) benchmark::DoNotOptimize(pp_odd(f, L).is_permutation());
}
BENCHMARK(BM_pp_odd);

void BM_kernel(benchmark::State& state) {
    const FieldCtx& f = field(2, 3);
    LinPoly L({{0, 1}, {2, 7}, {4, 9}}, 6);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(f, L).dim());
}
BENCHMARK(BM_kernel);

}  // namespace

BENCHMARK_MAIN();
