#include "fair/baseline.hpp"

#include <algorithm>
#include <cmath>

namespace fair {

Resolution baseline_resolution(const BaselinePolicy& policy, Direction direction,
                               const SimConfig& cfg) {
    const auto& ladder = direction == Direction::uplink ? cfg.uplink_resolutions
                                                        : cfg.downlink_resolutions;
    if (ladder.empty()) throw SimError("baseline_resolution: empty ladder");
    return policy.resolution == ResolutionMode::max ? ladder.back() : ladder.front();
}

ContentionState::ContentionState(std::uint64_t seed, const ContentionConfig& cfg)
    : cfg_(cfg), rng_(seed) {}

int ContentionState::uniform_slots(int bound) {
    if (bound <= 1) return 0;
    return static_cast<int>(rng_() % static_cast<std::uint64_t>(bound));
}

ContentionOutcome ContentionState::contend_period(
    const std::vector<VehicleState>& states,
    const std::map<std::string, LinkState>& links, const BaselinePolicy& policy,
    const SimConfig& cfg, double period_s) {
    ContentionOutcome out;

    struct Active {
        Flow* flow;
        double rate_bps;
        int aifsn;
    };

    const int aifsn_server =
        policy.aifs == AifsMode::different ? cfg_.aifsn_server : cfg_.aifsn_station;

    // Sync the flow set with the vehicles present this period. Departed
    // vehicles drop their queue and any frame in flight.
    std::map<std::string, Active> active;
    double pending_start = 0.0, pending_end = 0.0;
    for (const VehicleState& v : states) {
        const auto link = links.find(v.vehicle_id);
        const double rate = link == links.end() ? 0.0 : link->second.rate_bps;
        const auto add_flow = [&](Direction dir) {
            const std::string key =
                (dir == Direction::uplink ? "u:" : "d:") + v.vehicle_id;
            Flow& flow = flows_[key];
            if (flow.cw == 0) flow.cw = cfg_.cw_min;
            flow.frame_bits =
                baseline_resolution(policy, dir, cfg).bits(cfg.color_depth_bits);
            active.emplace(key, Active{&flow, rate,
                                       dir == Direction::downlink ? aifsn_server
                                                                  : cfg_.aifsn_station});
        };
        if (v.is_ucv) add_flow(Direction::uplink);
        if (v.is_dcv) add_flow(Direction::downlink);
    }
    for (auto it = flows_.begin(); it != flows_.end();)
        it = active.count(it->first) ? std::next(it) : flows_.erase(it);

    for (auto& [key, a] : active) {
        out.flows[key]; // every active flow reports, delivered or not
        pending_start += a.flow->sent_airtime_s;
        // Frame arrivals at the target rate.
        a.flow->arrears += period_s * cfg.fps0;
        while (a.flow->arrears >= 1.0) {
            a.flow->arrears -= 1.0;
            a.flow->queued += 1;
        }
    }

    double remaining = period_s;
    while (true) {
        // A flow may start a burst only if the burst fits what is left.
        std::vector<std::pair<const std::string*, Active*>> eligible;
        for (auto& [key, a] : active) {
            if (a.flow->queued <= 0 || !(a.rate_bps > 0)) continue;
            const double burst =
                std::min(cfg_.txop_limit_s,
                         (a.flow->frame_bits - a.flow->bits_sent) / a.rate_bps);
            if (burst <= remaining) eligible.push_back({&key, &a});
        }
        if (eligible.empty()) {
            out.idle_s += remaining;
            break;
        }

        int min_count = 0;
        std::vector<std::pair<const std::string*, Active*>> winners;
        for (auto& [key, a] : eligible) {
            const int count = a->aifsn + uniform_slots(a->flow->cw);
            if (winners.empty() || count < min_count) {
                min_count = count;
                winners.assign(1, {key, a});
            } else if (count == min_count) {
                winners.push_back({key, a});
            }
        }

        const double wait = min_count * cfg_.slot_time_s;
        if (wait >= remaining) {
            out.idle_s += remaining;
            break;
        }
        out.idle_s += wait;
        remaining -= wait;

        if (winners.size() == 1) {
            Active& a = *winners.front().second;
            const double burst = std::min(
                {cfg_.txop_limit_s, (a.flow->frame_bits - a.flow->bits_sent) / a.rate_bps,
                 remaining});
            if (burst <= 0) continue;
            remaining -= burst;
            a.flow->bits_sent += burst * a.rate_bps;
            a.flow->sent_airtime_s += burst;
            if (a.flow->bits_sent >= a.flow->frame_bits * (1.0 - 1e-12)) {
                FlowStats& st = out.flows[*winners.front().first];
                st.successful_airtime_s += a.flow->sent_airtime_s;
                st.frames_delivered += 1;
                out.successful_airtime_s += a.flow->sent_airtime_s;
                a.flow->bits_sent = 0.0;
                a.flow->sent_airtime_s = 0.0;
                a.flow->queued -= 1;
            }
            a.flow->cw = cfg_.cw_min;
        } else {
            // Collision: the channel is garbled for the longest burst and
            // every colliding frame is lost whole, clean bursts included.
            double air = 0.0;
            for (auto& [key, a] : winners) {
                const double burst = std::min(
                    cfg_.txop_limit_s,
                    (a->flow->frame_bits - a->flow->bits_sent) / a->rate_bps);
                air = std::max(air, burst);
            }
            air = std::min(air, remaining);
            remaining -= air;
            out.wasted_airtime_s += air;
            out.collisions += 1;
            for (auto& [key, a] : winners) {
                out.flows[*key].collisions += 1;
                out.wasted_airtime_s += a->flow->sent_airtime_s;
                a->flow->bits_sent = 0.0;
                a->flow->sent_airtime_s = 0.0;
                a->flow->queued -= 1;
                a->flow->cw = std::min(2 * a->flow->cw + 1, cfg_.cw_max);
            }
        }
    }

    for (auto& [key, a] : active) pending_end += a.flow->sent_airtime_s;
    out.pending_delta_s = pending_end - pending_start;
    return out;
}

ContentionOutcome contend_period(const std::vector<VehicleState>& states,
                                 const std::map<std::string, LinkState>& links,
                                 const BaselinePolicy& policy,
                                 const ContentionConfig& contention,
                                 const SimConfig& cfg, double period_s,
                                 std::uint64_t seed) {
    ContentionState state(seed, contention);
    return state.contend_period(states, links, policy, cfg, period_s);
}

} // namespace fair
