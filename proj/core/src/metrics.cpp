#include "fair/metrics.hpp"

namespace fair {

LedgerAggregates MetricsLedger::recompute_aggregates() const {
    LedgerAggregates agg;
    double util_sum = 0.0;
    for (const SystemPeriodRecord& row : system_series) {
        util_sum += row.utilization;
        agg.total_collisions += row.collisions;
    }
    if (!system_series.empty()) agg.run_avg_utilization = util_sum / system_series.size();

    double fps_u = 0.0, fps_d = 0.0;
    long rows_u = 0, rows_d = 0;
    double q_u = 0.0, q_d = 0.0;
    long sel_u = 0, sel_d = 0;
    double energy_u = 0.0, energy_d = 0.0;
    for (const VehiclePeriodRecord& row : vehicle_series) {
        const bool up = row.direction == Direction::uplink;
        (up ? fps_u : fps_d) += row.fps;
        (up ? rows_u : rows_d) += 1;
        (up ? agg.total_frames_u : agg.total_frames_d) += row.frames;
        (up ? energy_u : energy_d) += row.frames * row.frame_energy_j;
        if (row.selected) {
            (up ? q_u : q_d) += row.objective_q;
            (up ? sel_u : sel_d) += 1;
        }
    }
    if (rows_u > 0) agg.avg_fps_ucv = fps_u / rows_u;
    if (rows_d > 0) agg.avg_fps_dcv = fps_d / rows_d;
    if (sel_u > 0) agg.mean_q_u = q_u / sel_u;
    if (sel_d > 0) agg.mean_q_d = q_d / sel_d;
    if (agg.total_frames_u > 0) agg.mean_frame_energy_u = energy_u / agg.total_frames_u;
    if (agg.total_frames_d > 0) agg.mean_frame_energy_d = energy_d / agg.total_frames_d;
    agg.lifetime_energy_j = energy_u + energy_d;
    return agg;
}

} // namespace fair
