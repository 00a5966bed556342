#include "fair/allocator.hpp"

#include <algorithm>
#include <cmath>

namespace fair {

const char* to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::highway: return "highway";
        case CaseLabel::continuous_unallocated: return "continuous_unallocated";
        case CaseLabel::temporary_stop: return "temporary_stop";
        case CaseLabel::normal: return "normal";
    }
    return "?";
}

std::map<std::string, CaseLabel> classify(const std::vector<VehicleState>& states,
                                          const SimConfig& cfg) {
    std::map<std::string, CaseLabel> labels;
    for (const VehicleState& v : states) {
        if (!v.is_ucv) continue;
        CaseLabel label = CaseLabel::normal;
        if (v.speed > cfg.v_highway)
            label = CaseLabel::highway;
        else if (v.speed <= kStopSpeedEps)
            label = CaseLabel::temporary_stop;
        else if (v.unallocated_streak >= cfg.beta_unallocated)
            label = CaseLabel::continuous_unallocated;
        labels[v.vehicle_id] = label;
    }
    return labels;
}

double dop_max(double rate_bps, const SimConfig& cfg) {
    if (cfg.uplink_resolutions.empty())
        throw SimError("dop_max: empty uplink resolution ladder");
    const Resolution& top = cfg.uplink_resolutions.back();
    return frame_latency(top, cfg.color_depth_bits, rate_bps) * cfg.fps0 * cfg.period_s;
}

namespace {

struct Candidate {
    const VehicleState* state = nullptr;
    CaseLabel label = CaseLabel::normal;
    double rate_bps = 0.0;
};

// Descending speed, ties by id so plans are reproducible.
bool faster(const Candidate& a, const Candidate& b) {
    if (a.state->speed != b.state->speed) return a.state->speed > b.state->speed;
    return a.state->vehicle_id < b.state->vehicle_id;
}

} // namespace

AllocationResult allocate(const std::vector<VehicleState>& states,
                          const std::map<std::string, LinkState>& links,
                          const std::map<std::string, int>& streaks,
                          long period_index, const SimConfig& cfg) {
    AllocationResult result;
    AllocationPlan& plan = result.plan;
    result.streaks = streaks;
    plan.leftover_s = cfg.period_s;

    // Streaks of vehicles that left the scenario are dropped; newcomers
    // start at zero.
    for (auto it = result.streaks.begin(); it != result.streaks.end();) {
        const bool present = std::any_of(states.begin(), states.end(), [&](const VehicleState& v) {
            return v.vehicle_id == it->first && v.is_ucv;
        });
        it = present ? std::next(it) : result.streaks.erase(it);
    }

    std::vector<VehicleState> ucvs;
    std::vector<const VehicleState*> dcvs;
    for (const VehicleState& v : states) {
        if (v.is_ucv) {
            ucvs.push_back(v);
            ucvs.back().unallocated_streak = result.streaks.count(v.vehicle_id)
                                                 ? result.streaks.at(v.vehicle_id)
                                                 : 0;
            result.streaks.emplace(v.vehicle_id, ucvs.back().unallocated_streak);
        }
        if (v.is_dcv) dcvs.push_back(&v);
    }
    if (ucvs.empty() && dcvs.empty()) return result; // NoVehicles: leftover = T

    const auto labels = classify(ucvs, cfg);

    const auto rate_of = [&](const std::string& id) {
        const auto it = links.find(id);
        return it == links.end() ? 0.0 : it->second.rate_bps;
    };

    std::vector<Candidate> highway, case2, rest;
    std::vector<const VehicleState*> disconnected;
    for (const VehicleState& v : ucvs) {
        Candidate c{&v, labels.at(v.vehicle_id), rate_of(v.vehicle_id)};
        if (!(c.rate_bps > 0)) {
            disconnected.push_back(&v);
            continue;
        }
        switch (c.label) {
            case CaseLabel::highway: highway.push_back(c); break;
            case CaseLabel::continuous_unallocated: case2.push_back(c); break;
            default: rest.push_back(c); break;
        }
    }
    std::sort(highway.begin(), highway.end(), faster);
    std::sort(case2.begin(), case2.end(), faster);
    std::sort(rest.begin(), rest.end(), faster);

    // Reference vehicle x: the fastest moving non-highway UCV. Its own rate
    // sizes the speed-scaled grants.
    const Candidate* ref = nullptr;
    for (const auto* group : {&case2, &rest}) {
        for (const Candidate& c : *group) {
            if (c.label == CaseLabel::temporary_stop) continue;
            if (!ref || faster(c, *ref)) ref = &c;
        }
    }
    const double dopmax_ref = ref ? dop_max(ref->rate_bps, cfg) : 0.0;

    // Highway grants share one conservative size computed with the minimum
    // rate among them, so every one of them can deliver top resolution.
    double highway_dop = 0.0;
    if (!highway.empty()) {
        double r_min = highway.front().rate_bps;
        for (const Candidate& c : highway) r_min = std::min(r_min, c.rate_bps);
        highway_dop = dop_max(r_min, cfg);
    }

    const bool cadence_period = period_index % cfg.stop_offload_interval == 0;

    struct Demand {
        const Candidate* c;
        double duration;
        bool wants_grant; // false for off-cadence stops
    };
    std::vector<Demand> sequence;
    for (const Candidate& c : highway) sequence.push_back({&c, highway_dop, true});
    for (const Candidate& c : case2)
        sequence.push_back({&c, dopmax_ref / sigma_ratio(ref->state->speed, c.state->speed, cfg), true});
    for (const Candidate& c : rest) {
        if (c.label == CaseLabel::temporary_stop) {
            if (cadence_period) {
                const Resolution& bottom = cfg.uplink_resolutions.front();
                sequence.push_back({&c, frame_latency(bottom, cfg.color_depth_bits, c.rate_bps), true});
            } else {
                sequence.push_back({&c, 0.0, false});
            }
        } else {
            sequence.push_back({&c, dopmax_ref / sigma_ratio(ref->state->speed, c.state->speed, cfg), true});
        }
    }

    double budget = cfg.period_s;
    std::size_t i = 0;
    for (; i < sequence.size(); ++i) {
        const Demand& d = sequence[i];
        const std::string& id = d.c->state->vehicle_id;
        if (!d.wants_grant) {
            // Off-cadence stop: zero grant by design, streak untouched.
            plan.dop_grants.push_back({id, 0.0, d.c->label});
            continue;
        }
        if (d.duration >= budget) {
            // Clamp to what is left and stop granting.
            plan.dop_grants.push_back({id, budget, d.c->label});
            result.streaks[id] = budget > 0 ? 0 : result.streaks[id] + 1;
            budget = 0.0;
            ++i;
            break;
        }
        plan.dop_grants.push_back({id, d.duration, d.c->label});
        result.streaks[id] = 0;
        budget -= d.duration;
    }
    for (; i < sequence.size(); ++i) { // budget exhausted
        const Demand& d = sequence[i];
        plan.dop_grants.push_back({d.c->state->vehicle_id, 0.0, d.c->label});
        if (d.wants_grant) result.streaks[d.c->state->vehicle_id] += 1;
    }
    for (const VehicleState* v : disconnected) result.streaks[v->vehicle_id] += 1;

    // Leftover budget split equally over connected DCVs, by id.
    std::vector<const VehicleState*> connected_dcvs;
    for (const VehicleState* v : dcvs)
        if (rate_of(v->vehicle_id) > 0) connected_dcvs.push_back(v);
    std::sort(connected_dcvs.begin(), connected_dcvs.end(),
              [](const VehicleState* a, const VehicleState* b) {
                  return a->vehicle_id < b->vehicle_id;
              });
    if (budget > 0 && !connected_dcvs.empty()) {
        const double ddp = budget / static_cast<double>(connected_dcvs.size());
        for (const VehicleState* v : connected_dcvs) {
            plan.ddp_grants.push_back({v->vehicle_id, ddp});
            budget -= ddp;
        }
    }
    plan.leftover_s = budget;
    return result;
}

} // namespace fair
