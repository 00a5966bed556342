// Simulation engine: the period loop gluing trajectory sampling, link
// computation, reservation or contention, adaptation, and accounting.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "fair/baseline.hpp"
#include "fair/energy.hpp"
#include "fair/metrics.hpp"
#include "fair/trajectory.hpp"

namespace fair {

enum class Algorithm { fair, sa_max, sa_min, da_max, da_min };

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);
bool is_baseline(Algorithm a);
BaselinePolicy baseline_policy(Algorithm a);

struct RunSpec {
    std::shared_ptr<const Scenario> scenario;
    std::string scenario_name = "scenario";
    Algorithm algorithm = Algorithm::fair;
    SimConfig cfg = default_config();
    EnergyParams energy;
    ContentionConfig contention;
    RateTable rate_table = RateTable::default_80211n();
    double duration_s = 0.0; // 0: whole scenario span
    std::uint64_t seed = 1;
};

// Runs one simulation. When `audit` is non-null, one JSON object per period
// (the reservation plan, adaptation decisions, and system counters) is
// written per line. Deterministic for a given spec and seed.
MetricsLedger run(const RunSpec& spec, std::ostream* audit = nullptr);

// Run-average channel utilization: mean of per-period busy/T.
double channel_utilization_average(const MetricsLedger& ledger);

// Independent runs, order preserving; per-spec failures are isolated by the
// caller (errors propagate).
std::vector<MetricsLedger> sweep(const std::vector<RunSpec>& specs);

} // namespace fair
