#include "fair/adapter.hpp"

#include <cmath>

#include "fair/allocator.hpp"

namespace fair {

const char* to_string(Direction d) {
    return d == Direction::uplink ? "uplink" : "downlink";
}

double grant_utilization(const Resolution& res, double gamma, double grant_s,
                         double rate_bps) {
    if (!(grant_s > 0)) throw ZeroGrant("grant_utilization: grant must be > 0");
    if (!(rate_bps > 0)) throw LinkDown("grant_utilization: link rate is zero");
    return res.bits(gamma) / (grant_s * rate_bps);
}

std::pair<int, double> frames_in_grant(const Resolution& res, double gamma,
                                       double grant_s, double rate_bps,
                                       const SimConfig& cfg) {
    if (grant_s <= 0 || rate_bps <= 0) return {0, 0.0};
    // The top grantee's grant*rate/bits round-trips to 1 +/- 1 ulp; a bare
    // floor would drop its only frame.
    const int cap = static_cast<int>(std::ceil(cfg.fps0 * cfg.period_s));
    int count = static_cast<int>(std::floor(grant_s * rate_bps / res.bits(gamma) + 1e-9));
    count = std::min(count, cap);
    return {count, count / cfg.period_s};
}

namespace {

// C2 feasibility with a hair of slack: a grant exactly equal to one frame's
// airtime must stay feasible through FP rounding.
constexpr double kFeasibilityEps = 1e-9;

AdaptationDecision search_ladder(Direction direction, double grant_s, double rate_bps,
                                 const Weights& weights, const SimConfig& cfg,
                                 const EnergyParams& params) {
    const auto& ladder = direction == Direction::uplink ? cfg.uplink_resolutions
                                                        : cfg.downlink_resolutions;
    AdaptationDecision decision;
    decision.direction = direction;
    bool found = false;
    double best_q = 0.0;
    Resolution best;
    double best_u = 0.0, best_e = 0.0;
    for (const Resolution& res : ladder) {
        const double u = grant_utilization(res, cfg.color_depth_bits, grant_s, rate_bps);
        if (u > 1.0 + kFeasibilityEps) continue;
        const double e = direction == Direction::uplink
                             ? offload_frame_energy(res, cfg.color_depth_bits, rate_bps, params)
                             : download_frame_energy(res, cfg.color_depth_bits, rate_bps, params);
        const double q = weights.w_energy * e - weights.w_utilization * u;
        // <= so equal objectives resolve toward the larger resolution
        if (!found || q <= best_q) {
            found = true;
            best_q = q;
            best = res;
            best_u = u;
            best_e = e;
        }
    }
    if (!found) return decision; // infeasible: zero frames
    decision.feasible = true;
    decision.resolution = best;
    decision.objective_q = best_q;
    decision.utilization = std::min(best_u, 1.0);
    decision.frame_energy_j = best_e;
    const auto [count, fps] =
        frames_in_grant(best, cfg.color_depth_bits, grant_s, rate_bps, cfg);
    decision.frames = count;
    decision.achieved_fps = fps;
    return decision;
}

} // namespace

AdaptationDecision solve_p0(double dop_s, double rate_bps, const Weights& weights,
                            const SimConfig& cfg, const EnergyParams& params) {
    if (!(dop_s > 0)) throw ZeroGrant("solve_p0: grant must be > 0");
    if (!(rate_bps > 0)) throw LinkDown("solve_p0: link rate is zero");
    const double full = dop_max(rate_bps, cfg);
    if (dop_s >= full * (1.0 - kFeasibilityEps)) {
        // Grant sized for full-rate top-resolution delivery: take the top
        // of the ladder without searching.
        const Resolution& top = cfg.uplink_resolutions.back();
        AdaptationDecision decision;
        decision.direction = Direction::uplink;
        decision.feasible = true;
        decision.resolution = top;
        decision.utilization =
            std::min(grant_utilization(top, cfg.color_depth_bits, dop_s, rate_bps), 1.0);
        decision.frame_energy_j =
            offload_frame_energy(top, cfg.color_depth_bits, rate_bps, params);
        decision.objective_q = weights.w_energy * decision.frame_energy_j -
                               weights.w_utilization * decision.utilization;
        const auto [count, fps] =
            frames_in_grant(top, cfg.color_depth_bits, dop_s, rate_bps, cfg);
        decision.frames = count;
        decision.achieved_fps = fps;
        return decision;
    }
    return search_ladder(Direction::uplink, dop_s, rate_bps, weights, cfg, params);
}

AdaptationDecision solve_p1(double ddp_s, double rate_bps, const Weights& weights,
                            const SimConfig& cfg, const EnergyParams& params) {
    if (!(ddp_s > 0)) throw ZeroGrant("solve_p1: grant must be > 0");
    if (!(rate_bps > 0)) throw LinkDown("solve_p1: link rate is zero");
    return search_ladder(Direction::downlink, ddp_s, rate_bps, weights, cfg, params);
}

} // namespace fair
