#include <benchmark/benchmark.h>

#include <map>
#include <vector>

#include "fair/baseline.hpp"

using namespace fair;

static void BM_ContendPeriod(benchmark::State& state) {
    const SimConfig cfg = default_config();
    ContentionConfig ccfg;
    BaselinePolicy policy{AifsMode::same, ResolutionMode::max};

    std::vector<VehicleState> states;
    std::map<std::string, LinkState> links;
    for (int i = 0; i < state.range(); ++i) {
        VehicleState v;
        v.vehicle_id = "v" + std::to_string(i);
        v.is_ucv = i % 2 == 0;
        v.is_dcv = !v.is_ucv;
        states.push_back(v);
        LinkState l;
        l.rate_bps = 173e6;
        l.connected = true;
        links.emplace(v.vehicle_id, l);
    }

    ContentionState contention(7, ccfg);
    for (auto _ : state) {
        auto outcome = contention.contend_period(states, links, policy, cfg, cfg.period_s);
        benchmark::DoNotOptimize(outcome);
    }
}
BENCHMARK(BM_ContendPeriod)->Arg(2)->Arg(8)->Arg(20);

BENCHMARK_MAIN();
