// Symmetrical per-period reservation: classifies UCVs into traffic cases and
// reserves dedicated offloading periods (DOPs) plus downloading periods
// (DDPs) out of one allocation period T.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "fair/radio.hpp"
#include "fair/scenario.hpp"

namespace fair {

enum class CaseLabel {
    highway,                // V above the highway threshold
    continuous_unallocated, // no DOP for beta consecutive periods
    temporary_stop,         // V = 0 (red light, congestion, parking)
    normal,
};

const char* to_string(CaseLabel label);

// Speeds below this count as a temporary stop; absorbs velocity jitter of
// stopped vehicles in drone tracks.
inline constexpr double kStopSpeedEps = 0.05; // m/s

struct DopGrant {
    std::string vehicle_id;
    double duration_s = 0.0;
    CaseLabel label = CaseLabel::normal;
};

struct DdpGrant {
    std::string vehicle_id;
    double duration_s = 0.0;
};

struct AllocationPlan {
    double period_start_s = 0.0;
    std::vector<DopGrant> dop_grants; // in grant order
    std::vector<DdpGrant> ddp_grants; // by vehicle id
    double leftover_s = 0.0;          // unreserved airtime
};

struct AllocationResult {
    AllocationPlan plan;
    std::map<std::string, int> streaks; // updated unallocated streaks
};

// Labels every UCV in `states` with exactly one case. Priority:
// highway, then temporary stop, then continuous-unallocated, then normal.
std::map<std::string, CaseLabel> classify(const std::vector<VehicleState>& states,
                                          const SimConfig& cfg);

// Airtime sufficient to carry fps0*T frames at the top of the uplink ladder:
// (k_max*s_max*gamma / R) * fps0 * T.
double dop_max(double rate_bps, const SimConfig& cfg);

// One period of reservation. Grant order: highway UCVs (each sized with the
// minimum rate among them), then continuous-unallocated UCVs, then the rest
// in descending speed; stopped UCVs get one minimum-resolution frame on
// their cadence period only. A grant that overruns the running budget is
// clamped and the loop stops. Remaining budget is split equally over
// connected DCVs. `period_index` drives the stop-offload cadence.
AllocationResult allocate(const std::vector<VehicleState>& states,
                          const std::map<std::string, LinkState>& links,
                          const std::map<std::string, int>& streaks,
                          long period_index, const SimConfig& cfg);

} // namespace fair
