// Run statistics: per-vehicle and per-period series plus aggregates that are
// always recomputable from the series.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fair/adapter.hpp"
#include "fair/allocator.hpp"

namespace fair {

struct RunMeta {
    std::string algorithm;
    std::string scenario_name;
    int n_ucv = 0;
    int n_dcv = 0;
    std::uint64_t seed = 0;
    double duration_s = 0.0;
    double period_s = 0.0;
    std::string weights_label; // e.g. "w1:w2=1:1"
};

// One vehicle-direction-period row.
struct VehiclePeriodRecord {
    long period = 0;
    double time_s = 0.0;
    std::string vehicle_id;
    Direction direction = Direction::uplink;
    CaseLabel label = CaseLabel::normal; // uplink rows only
    double speed = 0.0;
    double distance_m = 0.0;
    double snr_db = 0.0;
    double rate_bps = 0.0;
    double grant_s = 0.0;
    bool selected = false; // a resolution was chosen this period
    Resolution resolution;
    int frames = 0;
    double fps = 0.0;
    double utilization = 0.0;   // of the grant (FAIR) or of the period (baselines)
    double frame_energy_j = 0.0;
    double objective_q = 0.0;   // meaningful when selected
};

struct SystemPeriodRecord {
    long period = 0;
    double time_s = 0.0;
    double busy_airtime_s = 0.0;
    double utilization = 0.0; // busy / T
    double leftover_s = 0.0;  // FAIR only
    long collisions = 0;      // baselines only
};

struct LedgerAggregates {
    double run_avg_utilization = 0.0;
    double avg_fps_ucv = 0.0;     // mean over uplink rows
    double avg_fps_dcv = 0.0;     // mean over downlink rows
    double mean_q_u = 0.0;        // mean over selected uplink rows
    double mean_q_d = 0.0;        // mean over selected downlink rows
    double mean_frame_energy_u = 0.0; // frame-weighted
    double mean_frame_energy_d = 0.0;
    double lifetime_energy_j = 0.0;
    long total_frames_u = 0;
    long total_frames_d = 0;
    long total_collisions = 0;

    friend bool operator==(const LedgerAggregates&, const LedgerAggregates&) = default;
};

struct MetricsLedger {
    RunMeta meta;
    std::vector<VehiclePeriodRecord> vehicle_series; // period-major, id-minor
    std::vector<SystemPeriodRecord> system_series;   // one row per period
    LedgerAggregates aggregates;

    // Recomputes every aggregate from the series; the audit property is that
    // the result equals `aggregates` exactly.
    LedgerAggregates recompute_aggregates() const;
};

} // namespace fair
