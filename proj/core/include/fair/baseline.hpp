// Contention-based baselines: slotted CSMA/CA with binary exponential
// backoff, TXOP-bounded bursts, and the four SA/DA x MAX/MIN policies.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fair/adapter.hpp"
#include "fair/radio.hpp"
#include "fair/scenario.hpp"

namespace fair {

struct ContentionConfig {
    int aifsn_server = 1;  // slots the server waits in DIFFERENT mode
    int aifsn_station = 2; // slots a station waits (and the server, in SAME mode)
    double slot_time_s = 9e-6;
    int cw_min = 15;
    int cw_max = 1023;
    // One channel access transmits at most this much airtime; a frame longer
    // than the limit takes several contention wins and dies whole if any of
    // its bursts collides.
    double txop_limit_s = 3.008e-3;
};

enum class AifsMode { same, different };
enum class ResolutionMode { max, min };

struct BaselinePolicy {
    AifsMode aifs = AifsMode::same;
    ResolutionMode resolution = ResolutionMode::max;
};

// Ladder extreme for the policy: MAX picks the top entry, MIN the bottom.
Resolution baseline_resolution(const BaselinePolicy& policy, Direction direction,
                               const SimConfig& cfg);

struct FlowStats {
    double successful_airtime_s = 0.0; // airtime of frames fully delivered
    long frames_delivered = 0;
    long collisions = 0; // collisions this flow took part in
};

struct ContentionOutcome {
    std::map<std::string, FlowStats> flows; // keyed "u:<id>" / "d:<id>"
    double successful_airtime_s = 0.0;
    double wasted_airtime_s = 0.0; // collided bursts + clean bursts of lost frames
    double idle_s = 0.0;           // AIFS, backoff, and end-of-period gaps
    // Airtime of frames still in flight at the period boundary, minus what
    // was in flight when the period started. successful + wasted + idle +
    // pending_delta adds up to the period.
    double pending_delta_s = 0.0;
    long collisions = 0;
};

// Backoff windows, per-flow frame progress, and the RNG; carried across
// periods within one run.
class ContentionState {
  public:
    ContentionState(std::uint64_t seed, const ContentionConfig& cfg);

    // Deterministic: the same state and inputs give the same outcome.
    ContentionOutcome contend_period(const std::vector<VehicleState>& states,
                                     const std::map<std::string, LinkState>& links,
                                     const BaselinePolicy& policy, const SimConfig& cfg,
                                     double period_s);

  private:
    struct Flow {
        int cw = 0; // set to cw_min when the flow first appears
        double frame_bits = 0.0;    // bits of the head-of-line frame
        double bits_sent = 0.0;     // progress of the head-of-line frame
        double sent_airtime_s = 0.0;
        double arrears = 0.0;       // fractional frame arrivals
        long queued = 0;
    };

    // Uniform in [0, bound) from raw mt19937_64 words; std distributions are
    // implementation-defined and would break cross-platform determinism.
    int uniform_slots(int bound);

    ContentionConfig cfg_;
    std::map<std::string, Flow> flows_;
    std::mt19937_64 rng_;
};

// One-shot convenience matching the single-period call shape: fresh state
// from `seed`, one period.
ContentionOutcome contend_period(const std::vector<VehicleState>& states,
                                 const std::map<std::string, LinkState>& links,
                                 const BaselinePolicy& policy,
                                 const ContentionConfig& contention,
                                 const SimConfig& cfg, double period_s,
                                 std::uint64_t seed);

} // namespace fair
