// Scenario model: simulation configuration, shared domain types, and the
// speed-derived coverage-change ratio that drives offloading-period scaling.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fair/errors.hpp"

namespace fair {

// One entry of a frame-resolution ladder. Pixel counts only; the bit volume
// of a frame is pixels() * color depth.
struct Resolution {
    int k = 0; // horizontal pixels
    int s = 0; // vertical pixels

    long long pixels() const { return static_cast<long long>(k) * s; }
    double bits(double gamma) const { return static_cast<double>(pixels()) * gamma; }
    std::string label() const { return std::to_string(k) + "x" + std::to_string(s); }

    friend bool operator==(const Resolution&, const Resolution&) = default;
};

// User preference weights: w_energy scales per-frame energy, w_utilization
// scales grant utilization in the selection objective.
struct Weights {
    double w_energy = 1.0;
    double w_utilization = 1.0;

    friend bool operator==(const Weights&, const Weights&) = default;
};

struct SimConfig {
    double period_s = 0.1;           // allocation period T
    double fps0 = 10.0;              // acceptable frame rate target
    double v_highway = 26.8;         // m/s, case-1 trigger
    int beta_unallocated = 3;        // periods, case-2 trigger
    int stop_offload_interval = 10;  // periods, case-3 offload cadence
    double camera_fov_rad = 0.8726646259971648; // 50 degrees
    double camera_range_m = 55.0;
    double color_depth_bits = 8.0;   // bits per pixel
    double carrier_freq_mhz = 2400.0;
    double pathloss_exponent = 6.0;
    double tx_power_dbm = 20.0;
    double noise_floor_dbm = -90.0;
    std::vector<Resolution> uplink_resolutions;   // ascending by pixel count
    std::vector<Resolution> downlink_resolutions; // ascending by pixel count
    Weights uplink_weights;   // omega_1, omega_2 defaults
    Weights downlink_weights; // omega_bar_1, omega_bar_2 defaults
};

// Defaults matching the reference evaluation setup: T = 100 ms, fps0 = 10 Hz,
// 8-step 128x128..640x480 ladders for both directions, unit weights.
SimConfig default_config();

// The eight supported frame resolutions, ascending by pixel count.
std::vector<Resolution> default_resolution_ladder();

struct VehicleState {
    std::string vehicle_id;
    double time_s = 0.0;
    double x = 0.0;
    double y = 0.0;
    double speed = 0.0; // m/s
    bool is_ucv = false;
    bool is_dcv = false;
    Weights uplink_weights;
    Weights downlink_weights;
    int unallocated_streak = 0; // consecutive periods with no positive DOP

    friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

struct ValidationIssue {
    std::string field;
    std::string message;
};
using ValidationReport = std::vector<ValidationIssue>;

// Report-style config check: returns one issue per violated invariant,
// empty report means valid. Never throws.
ValidationReport validate_config(const SimConfig& cfg);

// Area of newly captured surroundings per period for a vehicle moving at
// `speed`: (2l - theta*d) * V with d = V*T. Zero iff speed is zero.
// Throws CoverageOutrun when the camera coverage term goes non-positive.
double delta_area(double speed, const SimConfig& cfg);

// Ratio of two vehicles' coverage-change areas. Requires both speeds > 0;
// callers route stopped vehicles through case-3 classification instead.
double sigma_ratio(const VehicleState& n, const VehicleState& m, const SimConfig& cfg);

// Speed-only overload used by the allocator.
double sigma_ratio(double speed_n, double speed_m, const SimConfig& cfg);

} // namespace fair
