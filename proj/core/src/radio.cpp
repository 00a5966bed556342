#include "fair/radio.hpp"

#include <cmath>

namespace fair {

RateTable RateTable::default_80211n() {
    RateTable t;
    const double mb = 1e6;
    t.steps = {{2, 29 * mb},  {5, 58 * mb},   {9, 87 * mb},   {11, 116 * mb},
               {15, 173 * mb}, {18, 231 * mb}, {20, 260 * mb}, {25, 289 * mb}};
    return t;
}

bool RateTable::valid() const {
    if (steps.empty()) return false;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!(steps[i].rate_bps > 0)) return false;
        if (i > 0 && !(steps[i].min_snr_db > steps[i - 1].min_snr_db &&
                       steps[i].rate_bps > steps[i - 1].rate_bps))
            return false;
    }
    return true;
}

double path_loss_db(double distance_m, const SimConfig& cfg) {
    if (!(distance_m > 0))
        throw NonPositiveDistance("path_loss_db: distance must be > 0");
    return 20.0 * std::log10(cfg.carrier_freq_mhz) +
           10.0 * cfg.pathloss_exponent * std::log10(distance_m) - 24.0;
}

double snr_db(double path_loss_db, const SimConfig& cfg) {
    return cfg.tx_power_dbm - path_loss_db - cfg.noise_floor_dbm;
}

double rate_lookup(double snr, const RateTable& table) {
    double rate = 0.0;
    for (const RateStep& step : table.steps) {
        if (snr >= step.min_snr_db)
            rate = step.rate_bps;
        else
            break;
    }
    return rate;
}

LinkState link_state(double distance_m, const SimConfig& cfg, const RateTable& table) {
    LinkState link;
    link.distance_m = distance_m;
    link.path_loss_db = path_loss_db(distance_m, cfg);
    link.snr_db = snr_db(link.path_loss_db, cfg);
    link.rate_bps = rate_lookup(link.snr_db, table);
    link.connected = link.rate_bps > 0;
    return link;
}

double frame_latency(double frame_bits, double rate_bps) {
    if (!(rate_bps > 0)) throw LinkDown("frame_latency: link rate is zero");
    return frame_bits / rate_bps;
}

double frame_latency(const Resolution& res, double gamma, double rate_bps) {
    return frame_latency(res.bits(gamma), rate_bps);
}

} // namespace fair
