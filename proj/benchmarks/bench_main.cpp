#include <benchmark/benchmark.h>

#include "stackgame/engine.hpp"
#include "stackgame/estimator.hpp"
#include "stackgame/follower.hpp"

using namespace stackgame;

namespace {

GameParams params075() {
    GameParams p;
    p.beta = 0.75;
    return p;
}

// closed-form route: quadratic total objective
void BM_BestResponseQuadratic(benchmark::State& state) {
    auto p = params075();
    TrueSatisfaction f = SatisfactionPoly({3.0, -0.2});
    QuadraticIncentive g{0.5, -0.3};
    for (auto _ : state)
        benchmark::DoNotOptimize(best_response(g, f, p).y);
}
BENCHMARK(BM_BestResponseQuadratic);

// search route: grid + golden + derivative polish over [0, 100]
void BM_BestResponseLog(benchmark::State& state) {
    auto p = params075();
    TrueSatisfaction f = LogSatisfaction{10.0};
    QuadraticIncentive g{10.0, -1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(best_response(g, f, p).y);
}
BENCHMARK(BM_BestResponseLog);

ObservationHistory history_of(int n) {
    auto p = params075();
    TrueSatisfaction f = SatisfactionPoly({2.0, -0.15, -0.02});
    ObservationHistory h(p);
    for (int i = 0; i < n; ++i) {
        QuadraticIncentive g{0.5 + 0.4 * i, -0.5};
        h.add(g, best_response(g, f, p).y);
    }
    return h;
}

void BM_MinimalOrderFit(benchmark::State& state) {
    auto h = history_of(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(minimal_order_fit(h, 1e-8).residual);
}
BENCHMARK(BM_MinimalOrderFit)->Arg(3)->Arg(8)->Arg(20);

void BM_KktFitExact(benchmark::State& state) {
    auto h = history_of(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(kkt_fit(h, 2).residual);
}
BENCHMARK(BM_KktFitExact);

// one full simulated round, amortized over a short run
void BM_DeviceRound(benchmark::State& state) {
    Scenario s;
    s.params.beta = 0.75;
    s.devices.push_back({SatisfactionPoly({3.0, -0.2}), {0.5, -0.3}, {1.0, -0.3}});
    s.devices.push_back(
        {SatisfactionPoly({2.0, -0.15, -0.02}), {0.5, -0.5}, {1.5, -0.5}});
    s.max_iters = 10;
    for (auto _ : state) {
        auto result = run_device_level(s);
        benchmark::DoNotOptimize(result.records.size());
    }
    state.SetItemsProcessed(state.iterations() * s.max_iters);
}
BENCHMARK(BM_DeviceRound);

}  // namespace

BENCHMARK_MAIN();
