#include <benchmark/benchmark.h>

#include <random>

#include "emergence/apportion.hpp"
#include "emergence/generators.hpp"
#include "emergence/greedy.hpp"

using namespace emergence;

namespace {

Tpm random_tpm(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (int c = 0; c < n; ++c) {
        double sum = 0;
        for (int e = 0; e < n; ++e) {
            rows[c][e] = -std::log(1.0 - (rng() >> 11) * 0x1.0p-53);
            sum += rows[c][e];
        }
        for (int e = 0; e < n; ++e) rows[c][e] /= sum;
    }
    return Tpm::validate(rows);
}

void BM_CoarseGrain(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Tpm t = random_tpm(n, 1);
    std::vector<int> assign(n);
    for (int i = 0; i < n; ++i) assign[i] = i / 2;
    Partition p(assign);
    for (auto _ : state) benchmark::DoNotOptimize(coarse_grain(t, p));
}
BENCHMARK(BM_CoarseGrain)->Arg(8)->Arg(16)->Arg(40)->Arg(64);

void BM_Cp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Tpm t = random_tpm(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(cp(t));
}
BENCHMARK(BM_Cp)->Arg(8)->Arg(40)->Arg(64);

void BM_EnumeratePartitions(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_partitions(n));
}
BENCHMARK(BM_EnumeratePartitions)->Arg(8)->Arg(10);

void BM_FullAnalyze(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Tpm t = random_tpm(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(analyze(t));
}
BENCHMARK(BM_FullAnalyze)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_GreedyCompletion(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    GrowthConfig cfg;
    cfg.n_nodes = n;
    cfg.seed = 4;
    Tpm t = grow_pa_tpm(cfg);
    Partition finest = Partition::finest(n);
    for (auto _ : state) benchmark::DoNotOptimize(greedy_completion(t, finest));
}
BENCHMARK(BM_GreedyCompletion)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_BranchingGreedy(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    GrowthConfig cfg;
    cfg.n_nodes = n;
    cfg.seed = 5;
    Tpm t = grow_pa_tpm(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(branching_greedy(t));
}
BENCHMARK(BM_BranchingGreedy)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
