// Service adaptation: per-vehicle frame-resolution selection that trades
// per-frame energy against utilization of the reserved grant.
#pragma once

#include <string>
#include <utility>

#include "fair/energy.hpp"
#include "fair/radio.hpp"
#include "fair/scenario.hpp"

namespace fair {

enum class Direction { uplink, downlink };

const char* to_string(Direction d);

struct AdaptationDecision {
    Direction direction = Direction::uplink;
    bool feasible = false;      // false: grant too small for one minimum frame
    Resolution resolution;      // meaningful only when feasible
    double objective_q = 0.0;   // w_energy*E - w_utilization*U at the choice
    double utilization = 0.0;   // selected frame bits / (grant * rate), in [0,1]
    double frame_energy_j = 0.0;
    int frames = 0;             // frames carried this period
    double achieved_fps = 0.0;  // frames / T
};

// Fraction of the grant consumed by one frame: bits / (grant * rate).
// May exceed 1 for infeasible resolutions. Throws ZeroGrant on grant <= 0.
double grant_utilization(const Resolution& res, double gamma, double grant_s,
                         double rate_bps);

// Uplink selection: minimizes w1*EU - w2*UU over the uplink ladder subject
// to UU <= 1, ties toward the larger resolution. A grant at or above
// dop_max(rate) returns the top resolution without searching.
AdaptationDecision solve_p0(double dop_s, double rate_bps, const Weights& weights,
                            const SimConfig& cfg, const EnergyParams& params);

// Downlink mirror over the downlink ladder with receive energy; no
// top-resolution shortcut.
AdaptationDecision solve_p1(double ddp_s, double rate_bps, const Weights& weights,
                            const SimConfig& cfg, const EnergyParams& params);

// Frames of `res` that fit in `grant_s`, capped at ceil(fps0*T), and the
// resulting frame rate.
std::pair<int, double> frames_in_grant(const Resolution& res, double gamma,
                                       double grant_s, double rate_bps,
                                       const SimConfig& cfg);

} // namespace fair
