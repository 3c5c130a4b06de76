#include <benchmark/benchmark.h>

#include <vector>

#include "rtca/curve_algebra.hpp"
#include "rtca/engine.hpp"
#include "rtca/mta.hpp"
#include "rtca/oracle.hpp"

using namespace rtca;

namespace {

// Window extrema of a periodic stream, slightly widened so the algorithms
// have real work to do.
XiCurvePair periodic_curve(const std::vector<Time>& gaps, int n, Time pad) {
    std::vector<Time> t{0};
    while (t.size() < static_cast<std::size_t>(n + 8))
        t.push_back(t.back() + gaps[(t.size() - 1) % gaps.size()]);
    XiCurvePair x;
    for (int k = 1; k <= n; ++k) {
        Time mn = kUnbounded, mx = 0;
        for (std::size_t i = 0; i + k < t.size(); ++i) {
            mn = std::min(mn, t[i + k] - t[i]);
            mx = std::max(mx, t[i + k] - t[i]);
        }
        x.lower.push_back(mn);
        x.upper.push_back(mx + pad);
    }
    return x;
}

MtaSpec sleep_run_spec() {
    MtaSpec spec;
    Mode run, sleep;
    run.id = "run";
    run.service = periodic_curve({1, 2, 1, 1, 2}, 4, 1);
    run.backlogLow = 2;
    run.hasLow = true;
    run.dwellMin = 1;
    run.transitions.push_back({SwitchKind::BufferBelow, "", "sleep"});
    sleep.id = "sleep";
    sleep.service = periodic_curve({3, 4, 3, 3, 4}, 4, 1);
    sleep.backlogHigh = 6;
    sleep.hasHigh = true;
    sleep.dwellMin = 1;
    sleep.transitions.push_back({SwitchKind::BufferAbove, "", "run"});
    spec.modes = {run, sleep};
    spec.initialMode = "run";
    spec.initialBacklog = 4;
    return spec;
}

void BM_closure(benchmark::State& state) {
    XiCurvePair x = periodic_curve({2, 3, 2}, static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(causality_closure(x));
}
BENCHMARK(BM_closure)->Arg(8)->Arg(16)->Arg(32);

void BM_combine(benchmark::State& state) {
    CoarseCurveSet set;
    for (Count g = 1; g <= state.range(0); ++g) {
        XiCurvePair e = sample(periodic_curve({2, 3, 2}, 24, 1), g);
        set.entries.push_back(e);
    }
    for (auto _ : state) benchmark::DoNotOptimize(combine(set, 24));
}
BENCHMARK(BM_combine)->Arg(2)->Arg(4);

// Full component analysis of a small sleep/run model; the argument is the
// analysis granularity, so the series shows the coarsening speedup.
void BM_analyze(benchmark::State& state) {
    MtaSpec spec = sleep_run_spec();
    XiCurvePair arr = periodic_curve({2, 3, 2, 2, 3}, 8, 1);
    Count g = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(analyze_component(spec, arr, g, 6, {}));
}
BENCHMARK(BM_analyze)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_enumerate(benchmark::State& state) {
    XiCurvePair x = periodic_curve({1, 2}, 4, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_streams(x, state.range(0), 14));
}
BENCHMARK(BM_enumerate)->Arg(4)->Arg(6);

} // namespace

BENCHMARK_MAIN();
