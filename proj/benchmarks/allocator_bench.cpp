#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <vector>

#include "fair/allocator.hpp"

using namespace fair;

static void BM_Allocate(benchmark::State& state) {
    const SimConfig cfg = default_config();
    std::mt19937_64 rng(1);
    const auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
    };
    const double rates[] = {29e6, 58e6, 116e6, 173e6, 289e6};

    std::vector<VehicleState> states;
    std::map<std::string, LinkState> links;
    std::map<std::string, int> streaks;
    for (int i = 0; i < state.range(); ++i) {
        VehicleState v;
        v.vehicle_id = "v" + std::to_string(i);
        v.speed = uniform(0.0, 30.0);
        v.is_ucv = true;
        v.is_dcv = i % 2 == 0;
        states.push_back(v);
        LinkState l;
        l.rate_bps = rates[rng() % 5];
        l.connected = true;
        links.emplace(v.vehicle_id, l);
        streaks[v.vehicle_id] = static_cast<int>(rng() % 4);
    }

    long period = 0;
    for (auto _ : state) {
        auto result = allocate(states, links, streaks, period++, cfg);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_Allocate)->Arg(4)->Arg(20)->Arg(100);
