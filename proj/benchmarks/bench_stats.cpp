#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "botdrift/stats/adf.hpp"
#include "botdrift/stats/kpss.hpp"

namespace {

std::vector<double> random_walk(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::vector<double> y(n);
    double acc = 0.0;
    for (auto& v : y) v = acc += z(rng);
    return y;
}

void BM_Adf(benchmark::State& state) {
    const auto y = random_walk(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(botdrift::stats::adf_test(y));
}
BENCHMARK(BM_Adf)->Arg(12)->Arg(200)->Arg(1000);

void BM_KpssBoth(benchmark::State& state) {
    const auto y = random_walk(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(botdrift::stats::kpss_both(y));
}
BENCHMARK(BM_KpssBoth)->Arg(12)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
