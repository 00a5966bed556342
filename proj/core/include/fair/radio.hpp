// Radio model: log-distance path loss, SNR budget, stepwise rate lookup and
// per-frame transfer latency.
#pragma once

#include <vector>

#include "fair/scenario.hpp"

namespace fair {

struct LinkState {
    double distance_m = 0.0;
    double path_loss_db = 0.0;
    double snr_db = 0.0;
    double rate_bps = 0.0;
    bool connected = false;
};

struct RateStep {
    double min_snr_db = 0.0;
    double rate_bps = 0.0;
};

// Minimum-SNR to data-rate map. Thresholds and rates strictly increasing.
struct RateTable {
    std::vector<RateStep> steps;

    // 802.11n, 4 spatial streams: 29..289 Mbps over SNR thresholds 2..25 dB.
    static RateTable default_80211n();
    bool valid() const;
};

// P_L = 20*log10(f_MHz) + 10*n*log10(d) - 24. Strictly increasing in d.
double path_loss_db(double distance_m, const SimConfig& cfg);

// Link budget: snr = tx_power - path_loss - noise_floor.
double snr_db(double path_loss_db, const SimConfig& cfg);

// Highest rate whose threshold is at or below `snr`; 0 when below the table.
double rate_lookup(double snr_db, const RateTable& table);

// Full chain for one vehicle-to-server link.
LinkState link_state(double distance_m, const SimConfig& cfg, const RateTable& table);

// Transfer time of one frame of `frame_bits` at `rate_bps`. Throws LinkDown
// on a zero rate.
double frame_latency(double frame_bits, double rate_bps);
double frame_latency(const Resolution& res, double gamma, double rate_bps);

} // namespace fair
