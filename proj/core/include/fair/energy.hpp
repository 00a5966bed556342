// Energy model: camera sampling and radio promotion/transmission/tail energy
// per frame, receive energy for downloads, and windowed life-time totals.
#pragma once

#include <array>

#include "fair/radio.hpp"
#include "fair/scenario.hpp"

namespace fair {

struct MetricsLedger;

struct EnergyParams {
    double p_pro_w = 1.97;   // promotion phase power
    double t_pro_s = 0.034;  // promotion phase duration
    double p_tail_w = 1.61;  // tail phase power
    double t_tail_s = 0.21;  // tail phase duration
    double ptr_slope_w_per_mbps = 0.01821; // P_tr = slope*R_Mbps + intercept
    double ptr_intercept_w = 0.7368;
    // camera sampling energy, cubic in pixel count: c3,c2,c1,c0
    std::array<double, 4> cam_poly = {-1.772e-17, 7.491e-12, 2.379e-6, 0.6068};
    double p_rev_w = 1.0; // receive power (modeled constant, not measured)
    // When set, frames sent back-to-back in one grant share a single
    // promotion and tail, amortized evenly. Off by default: one promotion
    // and one tail per frame.
    bool coalesce_promotion_tail = false;

    double promotion_energy() const { return p_pro_w * t_pro_s; }
    double tail_energy() const { return p_tail_w * t_tail_s; }
    double transmit_power_w(double rate_bps) const {
        return ptr_slope_w_per_mbps * (rate_bps / 1e6) + ptr_intercept_w;
    }
};

// Radio energy of sending one frame: e_pro + P_tr(R) * latency + e_tail.
double transmit_energy(double frame_bits, double rate_bps, const EnergyParams& params);
double transmit_energy(const Resolution& res, double gamma, double rate_bps,
                       const EnergyParams& params);

// Camera sampling energy for one frame, cubic in the pixel count.
double camera_energy(long long pixels, const EnergyParams& params);
double camera_energy(const Resolution& res, const EnergyParams& params);

// Full uplink per-frame energy: camera sampling + transmission.
double offload_frame_energy(const Resolution& res, double gamma, double rate_bps,
                            const EnergyParams& params);

// Downlink per-frame energy: receive power times transfer latency.
double download_frame_energy(const Resolution& res, double gamma, double rate_bps,
                             const EnergyParams& params);

// Per-frame radio energy inside a back-to-back burst of `burst_frames`
// frames: promotion and tail amortized over the burst.
double burst_transmit_energy(double frame_bits, double rate_bps, int burst_frames,
                             const EnergyParams& params);

// Total energy of all frames completed in [window_start, window_end), by the
// starting time of the period each frame belongs to.
double lifetime_energy(const MetricsLedger& ledger, double window_start, double window_end);

} // namespace fair
