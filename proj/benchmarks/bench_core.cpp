#include <benchmark/benchmark.h>

#include <random>

#include "hallseek/candidate.hpp"
#include "hallseek/evaluator.hpp"
#include "hallseek/exact_arith.hpp"
#include "hallseek/modular.hpp"
#include "hallseek/oracle.hpp"

using namespace hallseek;

namespace {

Int random_odd(int bits) {
    Int v = 1;
    std::mt19937_64 rng(42);
    for (int got = 0; got < bits; got += 64) v = (v << 64) + Int(static_cast<unsigned long>(rng()));
    v &= (Int(1) << bits) - 1;
    return v | 1;
}

void BM_isqrt(benchmark::State& state) {
    Int n = random_odd(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Int r = isqrt(n);
        benchmark::DoNotOptimize(r.get_mpz_t());
    }
}
BENCHMARK(BM_isqrt)->Arg(64)->Arg(128)->Arg(256)->Arg(1024);

void BM_hall_k(benchmark::State& state) {
    Int x = random_odd(static_cast<int>(state.range(0))) + 2;
    for (auto _ : state) {
        HallPoint p = hall_k(x);
        benchmark::DoNotOptimize(p.k.get_mpz_t());
    }
}
BENCHMARK(BM_hall_k)->Arg(20)->Arg(40)->Arg(60)->Arg(90);

void BM_brute_scan_1e6(benchmark::State& state) {
    for (auto _ : state) {
        BruteResult r = brute_scan(Int(2), Int(1'000'000), Int(1), 1);
        benchmark::DoNotOptimize(r.hits.data());
    }
}
BENCHMARK(BM_brute_scan_1e6)->Unit(benchmark::kMillisecond);

void BM_factorize(benchmark::State& state) {
    Int n(static_cast<unsigned long>(state.range(0)));
    for (auto _ : state) {
        FactoredInteger f = factorize(n);
        benchmark::DoNotOptimize(f.factors.data());
    }
}
BENCHMARK(BM_factorize)->Arg(1155)->Arg(600851475143)->Arg(999999999989);

void BM_cube_roots(benchmark::State& state) {
    FactoredInteger b2 = factorize(Int(static_cast<long>(state.range(0)))).pow(2);
    for (auto _ : state) {
        auto roots = cube_roots_mod(Int(1), b2);
        benchmark::DoNotOptimize(roots.data());
    }
}
BENCHMARK(BM_cube_roots)->Arg(26)->Arg(1155)->Arg(600600);

void BM_cell_pipeline(benchmark::State& state) {
    const std::int64_t b = state.range(0);
    for (auto _ : state) {
        for (const SearchCell& cell : admissible_cells(b, Rat(1, 3)))
            for (const Candidate& cand : build_candidates(cell, 1)) {
                auto hits = evaluate_candidate(cand, 2, Threshold{1, 1});
                benchmark::DoNotOptimize(hits.data());
            }
    }
}
BENCHMARK(BM_cell_pipeline)->Arg(26)->Arg(1155)->Arg(99990);

}  // namespace

BENCHMARK_MAIN();
