#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "stochdom/convexity_test.hpp"
#include "stochdom/dominance_core.hpp"
#include "stochdom/rng.hpp"
#include "stochdom/special_fn.hpp"

using namespace stochdom;

namespace {

std::vector<double> odds_sample(int n, std::uint64_t seed) {
    const ReferenceTransform odds = ReferenceTransform::make(TransformKind::odds);
    std::mt19937_64 gen(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (double& v : out) v = odds.quantile(uniform01(gen));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

static void BM_BetaCdf(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-7;
        benchmark::DoNotOptimize(beta_cdf(0.1 + x, 43.0, 2.0));
    }
}
BENCHMARK(BM_BetaCdf);

static void BM_Gcm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto sample = odds_sample(n, 99);
    const auto te = TransformedEmpirical::from_sample(sample, TransformKind::odds);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gcm(te));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Gcm)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

static void BM_KsStatistic(benchmark::State& state) {
    const auto sample = odds_sample(100, 7);
    for (auto _ : state) {
        auto copy = sample;
        benchmark::DoNotOptimize(ks_statistic(std::move(copy), TransformKind::odds));
    }
}
BENCHMARK(BM_KsStatistic);

static void BM_OrderStatMean(benchmark::State& state) {
    const auto g = ParametricDistribution::parse("gamma(a=2,b=2)");
    for (auto _ : state) {
        benchmark::DoNotOptimize(g);
        benchmark::DoNotOptimize(order_stat_mean(g, OrderStatSpec(43, 44)));
    }
}
BENCHMARK(BM_OrderStatMean);

static void BM_NullTable(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            null_distribution(TransformKind::odds, 20, 200, 42, 1));
    }
}
BENCHMARK(BM_NullTable);

static void BM_DominanceDegree(benchmark::State& state) {
    const auto x = ParametricDistribution::parse("dagum(a=3,p=2,b=3)");
    const auto y = ParametricDistribution::parse("loglogistic(a=2,b=2)");
    for (auto _ : state) {
        benchmark::DoNotOptimize(dominance_degree(x, y, 20));
    }
}
BENCHMARK(BM_DominanceDegree);

BENCHMARK_MAIN();
