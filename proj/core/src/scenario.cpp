#include "fair/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace fair {

std::vector<Resolution> default_resolution_ladder() {
    return {{128, 128}, {128, 224}, {224, 224}, {224, 320},
            {320, 320}, {320, 480}, {480, 480}, {640, 480}};
}

SimConfig default_config() {
    SimConfig cfg;
    cfg.uplink_resolutions = default_resolution_ladder();
    cfg.downlink_resolutions = default_resolution_ladder();
    return cfg;
}

namespace {

void check_ladder(const std::vector<Resolution>& ladder, const char* field,
                  ValidationReport& report) {
    if (ladder.empty()) {
        report.push_back({field, "resolution list must not be empty"});
        return;
    }
    for (const Resolution& r : ladder) {
        if (r.k <= 0 || r.s <= 0) {
            report.push_back({field, "resolution " + r.label() + " has non-positive dimension"});
            return;
        }
    }
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i].pixels() <= ladder[i - 1].pixels()) {
            report.push_back({field, "resolutions must be sorted ascending by pixel count (" +
                                          ladder[i - 1].label() + " before " + ladder[i].label() + ")"});
            return;
        }
    }
}

} // namespace

ValidationReport validate_config(const SimConfig& cfg) {
    ValidationReport report;
    if (!(cfg.period_s > 0)) report.push_back({"period_s", "period must be > 0"});
    if (!(cfg.fps0 > 0)) report.push_back({"fps0", "target frame rate must be > 0"});
    if (cfg.beta_unallocated < 1) report.push_back({"beta_unallocated", "must be >= 1"});
    if (cfg.stop_offload_interval < 1) report.push_back({"stop_offload_interval", "must be >= 1"});
    if (!(cfg.v_highway > 0)) report.push_back({"v_highway", "highway speed threshold must be > 0"});
    if (!(cfg.camera_fov_rad > 0)) report.push_back({"camera_fov_rad", "field of view must be > 0"});
    if (!(cfg.camera_range_m > 0)) report.push_back({"camera_range_m", "camera range must be > 0"});
    if (!(cfg.color_depth_bits > 0)) report.push_back({"color_depth_bits", "color depth must be > 0"});
    if (!(cfg.carrier_freq_mhz > 0)) report.push_back({"carrier_freq_mhz", "carrier frequency must be > 0"});
    if (!(cfg.pathloss_exponent > 0)) report.push_back({"pathloss_exponent", "path-loss exponent must be > 0"});
    check_ladder(cfg.uplink_resolutions, "uplink_resolutions", report);
    check_ladder(cfg.downlink_resolutions, "downlink_resolutions", report);
    if (!(cfg.uplink_weights.w_energy > 0) || !(cfg.uplink_weights.w_utilization > 0))
        report.push_back({"uplink_weights", "weights must be strictly positive"});
    if (!(cfg.downlink_weights.w_energy > 0) || !(cfg.downlink_weights.w_utilization > 0))
        report.push_back({"downlink_weights", "weights must be strictly positive"});
    return report;
}

double delta_area(double speed, const SimConfig& cfg) {
    if (speed < 0) throw SimError("delta_area: negative speed");
    if (speed == 0.0) return 0.0;
    const double travelled = speed * cfg.period_s;
    const double coverage = 2.0 * cfg.camera_range_m - cfg.camera_fov_rad * travelled;
    if (coverage <= 0.0)
        throw CoverageOutrun("delta_area: camera coverage outrun at speed " + std::to_string(speed));
    return coverage * speed;
}

double sigma_ratio(double speed_n, double speed_m, const SimConfig& cfg) {
    const double area_n = delta_area(speed_n, cfg);
    const double area_m = delta_area(speed_m, cfg);
    if (area_n == 0.0 || area_m == 0.0)
        throw ZeroSpeed("sigma_ratio: zero coverage change, classify the stop first");
    return area_n / area_m;
}

double sigma_ratio(const VehicleState& n, const VehicleState& m, const SimConfig& cfg) {
    return sigma_ratio(n.speed, m.speed, cfg);
}

} // namespace fair
