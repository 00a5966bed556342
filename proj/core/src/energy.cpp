#include "fair/energy.hpp"

#include "fair/metrics.hpp"

namespace fair {

double transmit_energy(double frame_bits, double rate_bps, const EnergyParams& params) {
    const double latency = frame_latency(frame_bits, rate_bps);
    return params.promotion_energy() + params.transmit_power_w(rate_bps) * latency +
           params.tail_energy();
}

double transmit_energy(const Resolution& res, double gamma, double rate_bps,
                       const EnergyParams& params) {
    return transmit_energy(res.bits(gamma), rate_bps, params);
}

double camera_energy(long long pixels, const EnergyParams& params) {
    const double p = static_cast<double>(pixels);
    const auto& c = params.cam_poly;
    return ((c[0] * p + c[1]) * p + c[2]) * p + c[3];
}

double camera_energy(const Resolution& res, const EnergyParams& params) {
    return camera_energy(res.pixels(), params);
}

double offload_frame_energy(const Resolution& res, double gamma, double rate_bps,
                            const EnergyParams& params) {
    return camera_energy(res, params) + transmit_energy(res, gamma, rate_bps, params);
}

double download_frame_energy(const Resolution& res, double gamma, double rate_bps,
                             const EnergyParams& params) {
    return params.p_rev_w * frame_latency(res, gamma, rate_bps);
}

double burst_transmit_energy(double frame_bits, double rate_bps, int burst_frames,
                             const EnergyParams& params) {
    if (burst_frames < 1) throw SimError("burst_transmit_energy: empty burst");
    const double latency = frame_latency(frame_bits, rate_bps);
    const double fixed = params.promotion_energy() + params.tail_energy();
    return fixed / burst_frames + params.transmit_power_w(rate_bps) * latency;
}

double lifetime_energy(const MetricsLedger& ledger, double window_start, double window_end) {
    double total = 0.0;
    for (const VehiclePeriodRecord& row : ledger.vehicle_series) {
        if (row.time_s >= window_start && row.time_s < window_end)
            total += row.frames * row.frame_energy_j;
    }
    return total;
}

} // namespace fair
