#include <benchmark/benchmark.h>

#include "lacunary/classifiers.hpp"
#include "lacunary/constructions.hpp"
#include "lacunary/means.hpp"
#include "lacunary/schedule.hpp"
#include "lacunary/sequence.hpp"
#include "lacunary/transforms.hpp"

using namespace lacunary;

namespace {

RealSequence sqrt_difference() { return forward_difference(make_catalog_sequence("sqrt")); }

void BM_StrongCesaro(benchmark::State& state) {
    const auto d = sqrt_difference();
    const auto points = checkpoint_ladder(static_cast<Index>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(strong_cesaro_deviation(d, 0.0, points));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StrongCesaro)->RangeMultiplier(4)->Range(1 << 14, 1 << 20);

void BM_BlockMeans(benchmark::State& state) {
    const auto d = sqrt_difference();
    const auto R = static_cast<Index>(state.range(0));
    const auto theta = make_lacunary_schedule(ScheduleFamily::Geometric, {{"ratio", 2}}, R);
    for (auto _ : state) benchmark::DoNotOptimize(ntheta_block_means(d, 0.0, theta, R));
    state.SetItemsProcessed(state.iterations() * (Index{1} << R));
}
BENCHMARK(BM_BlockMeans)->DenseRange(14, 20, 3);

void BM_ExceedDensity(benchmark::State& state) {
    const auto a = make_catalog_sequence("square_indicator");
    const std::vector<Index> points{static_cast<Index>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(statistical_exceed_counts(a, 0.0, 0.5, points));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExceedDensity)->Arg(1000000);

void BM_AbelValue(benchmark::State& state) {
    const auto a = make_catalog_sequence("alternating");
    const double x = 1.0 - 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(abel_value(a, x));
}
BENCHMARK(BM_AbelValue)->Arg(10)->Arg(100)->Arg(1000);

void BM_SlowOscillation(benchmark::State& state) {
    const auto a = make_catalog_sequence("cos_pi_sqrt");
    ToleranceConfig cfg;
    cfg.n_max = static_cast<Index>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(slow_oscillation_profile(a, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SlowOscillation)->Arg(1 << 16)->Arg(1 << 20);

void BM_CesaroGapConstruction(benchmark::State& state) {
    const auto theta = make_lacunary_schedule(ScheduleFamily::Power, {{"p", 2}}, 200);
    for (auto _ : state) benchmark::DoNotOptimize(cesaro_gap_counterexample(theta, state.range(0)));
}
BENCHMARK(BM_CesaroGapConstruction)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
