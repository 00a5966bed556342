#include "fair/engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

namespace fair {

using nlohmann::json;

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::fair: return "fair";
        case Algorithm::sa_max: return "sa_max";
        case Algorithm::sa_min: return "sa_min";
        case Algorithm::da_max: return "da_max";
        case Algorithm::da_min: return "da_min";
    }
    return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "fair") return Algorithm::fair;
    if (s == "sa_max") return Algorithm::sa_max;
    if (s == "sa_min") return Algorithm::sa_min;
    if (s == "da_max") return Algorithm::da_max;
    if (s == "da_min") return Algorithm::da_min;
    throw SimError("unknown algorithm: " + s);
}

bool is_baseline(Algorithm a) { return a != Algorithm::fair; }

BaselinePolicy baseline_policy(Algorithm a) {
    BaselinePolicy p;
    switch (a) {
        case Algorithm::sa_max: p = {AifsMode::same, ResolutionMode::max}; break;
        case Algorithm::sa_min: p = {AifsMode::same, ResolutionMode::min}; break;
        case Algorithm::da_max: p = {AifsMode::different, ResolutionMode::max}; break;
        case Algorithm::da_min: p = {AifsMode::different, ResolutionMode::min}; break;
        case Algorithm::fair: throw SimError("fair is not a contention baseline");
    }
    return p;
}

namespace {

// Vehicles crossing the server point would blow up the log-distance model;
// clamp to one millimetre.
constexpr double kMinDistance = 1e-3;

std::map<std::string, LinkState> compute_links(const std::vector<VehicleState>& states,
                                               const Scenario& scenario,
                                               const SimConfig& cfg,
                                               const RateTable& table) {
    std::map<std::string, LinkState> links;
    for (const VehicleState& v : states) {
        const double d = std::max(
            kMinDistance, std::hypot(v.x - scenario.server_x, v.y - scenario.server_y));
        links.emplace(v.vehicle_id, link_state(d, cfg, table));
    }
    return links;
}

double per_frame_energy(Direction dir, const Resolution& res, double rate_bps,
                        int burst_frames, const SimConfig& cfg,
                        const EnergyParams& params) {
    if (dir == Direction::downlink)
        return download_frame_energy(res, cfg.color_depth_bits, rate_bps, params);
    if (params.coalesce_promotion_tail && burst_frames > 1)
        return camera_energy(res, params) +
               burst_transmit_energy(res.bits(cfg.color_depth_bits), rate_bps,
                                     burst_frames, params);
    return offload_frame_energy(res, cfg.color_depth_bits, rate_bps, params);
}

json grant_json(const DopGrant& g) {
    return json{{"id", g.vehicle_id}, {"duration", g.duration_s}, {"case", to_string(g.label)}};
}

} // namespace

MetricsLedger run(const RunSpec& spec, std::ostream* audit) {
    if (!spec.scenario) throw SimError("run: no scenario attached");
    const Scenario& scenario = *spec.scenario;
    const SimConfig& cfg = spec.cfg;
    {
        const ValidationReport issues = validate_config(cfg);
        if (!issues.empty())
            throw SimError("run: invalid config: " + issues.front().field + ": " +
                           issues.front().message);
    }
    if (!spec.rate_table.valid()) throw SimError("run: invalid rate table");

    const double span = scenario.duration_s();
    double duration = spec.duration_s > 0 ? spec.duration_s : span;
    if (duration > span + 1e-9)
        throw OutOfRange("run: duration exceeds the scenario span");
    const long n_periods = static_cast<long>(std::floor(duration / cfg.period_s + 1e-9));

    MetricsLedger ledger;
    ledger.meta.algorithm = to_string(spec.algorithm);
    ledger.meta.scenario_name = spec.scenario_name;
    ledger.meta.seed = spec.seed;
    ledger.meta.duration_s = n_periods * cfg.period_s;
    ledger.meta.period_s = cfg.period_s;
    for (const auto& [id, role] : scenario.roles) {
        if (role != Role::dcv) ledger.meta.n_ucv += 1;
        if (role != Role::ucv) ledger.meta.n_dcv += 1;
    }
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "w1:w2=%g:%g", cfg.uplink_weights.w_energy,
                      cfg.uplink_weights.w_utilization);
        ledger.meta.weights_label = buf;
    }

    std::map<std::string, int> streaks;
    ContentionState contention(spec.seed, spec.contention);

    for (long k = 0; k < n_periods; ++k) {
        const double t = scenario.time_origin_s + k * cfg.period_s;
        const std::vector<VehicleState> states = sample_states(scenario, t, cfg);
        const auto links = compute_links(states, scenario, cfg, spec.rate_table);

        SystemPeriodRecord sys;
        sys.period = k;
        sys.time_s = t;

        json audit_line;
        if (audit) {
            audit_line["period"] = k;
            audit_line["t"] = t;
            audit_line["algorithm"] = to_string(spec.algorithm);
        }

        if (states.empty()) {
            sys.leftover_s = spec.algorithm == Algorithm::fair ? cfg.period_s : 0.0;
            ledger.system_series.push_back(sys);
            if (audit) *audit << audit_line.dump() << '\n';
            continue;
        }

        const auto base_row = [&](const VehicleState& v, Direction dir) {
            VehiclePeriodRecord row;
            row.period = k;
            row.time_s = t;
            row.vehicle_id = v.vehicle_id;
            row.direction = dir;
            row.speed = v.speed;
            const LinkState& link = links.at(v.vehicle_id);
            row.distance_m = link.distance_m;
            row.snr_db = link.snr_db;
            row.rate_bps = link.rate_bps;
            return row;
        };

        if (spec.algorithm == Algorithm::fair) {
            AllocationResult alloc = allocate(states, links, streaks, k, cfg);
            streaks = std::move(alloc.streaks);
            const AllocationPlan& plan = alloc.plan;

            std::map<std::string, const DopGrant*> dop_of;
            for (const DopGrant& g : plan.dop_grants) dop_of.emplace(g.vehicle_id, &g);
            std::map<std::string, const DdpGrant*> ddp_of;
            for (const DdpGrant& g : plan.ddp_grants) ddp_of.emplace(g.vehicle_id, &g);

            double busy = 0.0;
            json decisions = json::array();
            for (const VehicleState& v : states) {
                const LinkState& link = links.at(v.vehicle_id);
                if (v.is_ucv) {
                    VehiclePeriodRecord row = base_row(v, Direction::uplink);
                    const auto it = dop_of.find(v.vehicle_id);
                    if (it != dop_of.end()) {
                        row.label = it->second->label;
                        row.grant_s = it->second->duration_s;
                    }
                    if (row.grant_s > 0 && link.connected) {
                        const AdaptationDecision d = solve_p0(
                            row.grant_s, link.rate_bps, v.uplink_weights, cfg, spec.energy);
                        if (d.feasible) {
                            row.selected = true;
                            row.resolution = d.resolution;
                            row.frames = d.frames;
                            row.fps = d.achieved_fps;
                            row.utilization = d.utilization;
                            row.objective_q = d.objective_q;
                            row.frame_energy_j =
                                per_frame_energy(Direction::uplink, d.resolution,
                                                 link.rate_bps, d.frames, cfg, spec.energy);
                            busy += std::min(
                                row.grant_s,
                                d.frames * frame_latency(d.resolution, cfg.color_depth_bits,
                                                         link.rate_bps));
                        }
                    }
                    if (audit && row.grant_s > 0)
                        decisions.push_back(json{{"id", v.vehicle_id},
                                                 {"dir", "uplink"},
                                                 {"grant", row.grant_s},
                                                 {"k", row.resolution.k},
                                                 {"s", row.resolution.s},
                                                 {"frames", row.frames},
                                                 {"q", row.objective_q}});
                    ledger.vehicle_series.push_back(std::move(row));
                }
                if (v.is_dcv) {
                    VehiclePeriodRecord row = base_row(v, Direction::downlink);
                    const auto it = ddp_of.find(v.vehicle_id);
                    if (it != ddp_of.end()) row.grant_s = it->second->duration_s;
                    if (row.grant_s > 0 && link.connected) {
                        const AdaptationDecision d = solve_p1(
                            row.grant_s, link.rate_bps, v.downlink_weights, cfg, spec.energy);
                        if (d.feasible) {
                            row.selected = true;
                            row.resolution = d.resolution;
                            row.frames = d.frames;
                            row.fps = d.achieved_fps;
                            row.utilization = d.utilization;
                            row.objective_q = d.objective_q;
                            row.frame_energy_j =
                                per_frame_energy(Direction::downlink, d.resolution,
                                                 link.rate_bps, d.frames, cfg, spec.energy);
                            busy += std::min(
                                row.grant_s,
                                d.frames * frame_latency(d.resolution, cfg.color_depth_bits,
                                                         link.rate_bps));
                        }
                    }
                    if (audit && row.grant_s > 0)
                        decisions.push_back(json{{"id", v.vehicle_id},
                                                 {"dir", "downlink"},
                                                 {"grant", row.grant_s},
                                                 {"k", row.resolution.k},
                                                 {"s", row.resolution.s},
                                                 {"frames", row.frames},
                                                 {"q", row.objective_q}});
                    ledger.vehicle_series.push_back(std::move(row));
                }
            }
            sys.busy_airtime_s = busy;
            sys.utilization = busy / cfg.period_s;
            sys.leftover_s = plan.leftover_s;
            if (audit) {
                json dops = json::array(), ddps = json::array();
                for (const DopGrant& g : plan.dop_grants) dops.push_back(grant_json(g));
                for (const DdpGrant& g : plan.ddp_grants)
                    ddps.push_back(json{{"id", g.vehicle_id}, {"duration", g.duration_s}});
                audit_line["plan"] =
                    json{{"dop", dops}, {"ddp", ddps}, {"leftover", plan.leftover_s}};
                audit_line["decisions"] = decisions;
            }
        } else {
            const BaselinePolicy policy = baseline_policy(spec.algorithm);
            const ContentionOutcome outcome =
                contention.contend_period(states, links, policy, cfg, cfg.period_s);

            for (const VehicleState& v : states) {
                const LinkState& link = links.at(v.vehicle_id);
                const auto flow_row = [&](Direction dir) {
                    VehiclePeriodRecord row = base_row(v, dir);
                    const std::string key =
                        (dir == Direction::uplink ? "u:" : "d:") + v.vehicle_id;
                    const auto it = outcome.flows.find(key);
                    const Resolution res = baseline_resolution(policy, dir, cfg);
                    if (it != outcome.flows.end() && link.connected) {
                        const Weights& w = dir == Direction::uplink ? v.uplink_weights
                                                                    : v.downlink_weights;
                        row.selected = true;
                        row.resolution = res;
                        row.frames = static_cast<int>(it->second.frames_delivered);
                        row.fps = row.frames / cfg.period_s;
                        row.utilization = it->second.successful_airtime_s / cfg.period_s;
                        row.frame_energy_j = per_frame_energy(dir, res, link.rate_bps, 1,
                                                              cfg, spec.energy);
                        row.objective_q = w.w_energy * row.frame_energy_j -
                                          w.w_utilization * row.utilization;
                    }
                    ledger.vehicle_series.push_back(std::move(row));
                };
                if (v.is_ucv) flow_row(Direction::uplink);
                if (v.is_dcv) flow_row(Direction::downlink);
            }
            sys.busy_airtime_s = outcome.successful_airtime_s;
            sys.utilization = outcome.successful_airtime_s / cfg.period_s;
            sys.collisions = outcome.collisions;
            if (audit) {
                json flows = json::array();
                for (const auto& [key, st] : outcome.flows)
                    flows.push_back(json{{"flow", key},
                                         {"delivered", st.frames_delivered},
                                         {"airtime", st.successful_airtime_s},
                                         {"collisions", st.collisions}});
                audit_line["contention"] = json{{"flows", flows},
                                                {"collisions", outcome.collisions},
                                                {"wasted", outcome.wasted_airtime_s},
                                                {"idle", outcome.idle_s}};
            }
        }

        ledger.system_series.push_back(sys);
        if (audit) {
            audit_line["system"] = json{{"busy", sys.busy_airtime_s},
                                        {"utilization", sys.utilization},
                                        {"leftover", sys.leftover_s},
                                        {"collisions", sys.collisions}};
            *audit << audit_line.dump() << '\n';
        }
    }

    ledger.aggregates = ledger.recompute_aggregates();
    return ledger;
}

double channel_utilization_average(const MetricsLedger& ledger) {
    if (ledger.system_series.empty()) return 0.0;
    double sum = 0.0;
    for (const SystemPeriodRecord& row : ledger.system_series) sum += row.utilization;
    return sum / ledger.system_series.size();
}

std::vector<MetricsLedger> sweep(const std::vector<RunSpec>& specs) {
    std::vector<MetricsLedger> ledgers;
    ledgers.reserve(specs.size());
    for (const RunSpec& spec : specs) ledgers.push_back(run(spec));
    return ledgers;
}

} // namespace fair
