// Microbenchmarks for the hot paths: life-table construction, the
// bisection e0 solve, and a full single-trajectory projection.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rateproj/lee_carter.hpp"
#include "rateproj/life_table.hpp"
#include "rateproj/mortality_projector.hpp"

namespace {

using namespace rateproj;

std::vector<double> baseline_log_rates() {
    const AgeGrid g = AgeGrid::canonical_full();
    std::vector<double> a(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double mid = g.group(i).midpoint();
        if (i == 0) {
            a[i] = std::log(0.02);
        } else if (i == 1) {
            a[i] = std::log(0.003);
        } else {
            a[i] = std::log(0.00025) + 0.073 * (mid - 5.0);
        }
    }
    return a;
}

std::vector<double> unit_sum_bx() {
    const AgeGrid g = AgeGrid::canonical_full();
    std::vector<double> b(g.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        b[i] = 1.5 - g.group(i).midpoint() / 150.0;
        sum += b[i];
    }
    for (double& v : b) v /= sum;
    return b;
}

MortalitySchedule baseline_schedule() {
    const auto a = baseline_log_rates();
    std::vector<double> mx(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mx[i] = std::exp(a[i]);
    return MortalitySchedule(AgeGrid::canonical_full(), std::move(mx));
}

void BM_BuildLifeTable(benchmark::State& state) {
    const MortalitySchedule sched = baseline_schedule();
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_life_table(sched, Sex::Female));
    }
}
BENCHMARK(BM_BuildLifeTable);

void BM_E0FromMx(benchmark::State& state) {
    const MortalitySchedule sched = baseline_schedule();
    for (auto _ : state) {
        benchmark::DoNotOptimize(e0_from_mx(sched, Sex::Male));
    }
}
BENCHMARK(BM_E0FromMx);

void BM_SolveKForE0(benchmark::State& state) {
    const auto a = baseline_log_rates();
    const auto b = unit_sum_bx();
    const BisectionConfig cfg;
    const double target = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_k_for_e0(a, b, target, Sex::Female, cfg));
    }
}
BENCHMARK(BM_SolveKForE0)->Arg(70)->Arg(85)->Arg(95);

void BM_ProjectTrajectory(benchmark::State& state) {
    MortalityFitProducts fit;
    fit.ax_f = baseline_log_rates();
    fit.ax_m = fit.ax_f;
    for (double& v : fit.ax_m) v += 0.2;
    fit.b_x = unit_sum_bx();
    fit.b_ux = ultimate_bux(fit.b_x);
    fit.rotate = true;

    const int periods = static_cast<int>(state.range(0));
    std::vector<double> e0_f(periods), e0_m(periods);
    for (int i = 0; i < periods; ++i) {
        e0_f[i] = 78.0 + 0.6 * i;
        e0_m[i] = 73.0 + 0.6 * i;
    }
    const MortalityProjectionConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(project_trajectory(fit, e0_f, e0_m, cfg));
    }
    state.SetItemsProcessed(state.iterations() * periods * 2);  // k solves
}
BENCHMARK(BM_ProjectTrajectory)->Arg(18);

void BM_RotatedBx(benchmark::State& state) {
    RotationSchedule s;
    s.b_x = unit_sum_bx();
    s.b_ux = ultimate_bux(s.b_x);
    double e0 = 85.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rotated_bx(s, e0));
        e0 = e0 >= 100.0 ? 80.0 : e0 + 0.1;
    }
}
BENCHMARK(BM_RotatedBx);

}  // namespace

BENCHMARK_MAIN();
