#include <doctest.h>

#include <cmath>

#include "fair/baseline.hpp"

using namespace fair;

namespace {

VehicleState vehicle(const std::string& id, bool up, bool down) {
    VehicleState v;
    v.vehicle_id = id;
    v.is_ucv = up;
    v.is_dcv = down;
    return v;
}

LinkState link_at(double rate_bps) {
    LinkState l;
    l.rate_bps = rate_bps;
    l.connected = rate_bps > 0;
    return l;
}

} // namespace

TEST_CASE("baseline_resolution picks the ladder extremes") {
    const SimConfig cfg = default_config();
    CHECK(baseline_resolution({AifsMode::same, ResolutionMode::max}, Direction::uplink, cfg) ==
          Resolution{640, 480});
    CHECK(baseline_resolution({AifsMode::different, ResolutionMode::min}, Direction::downlink,
                              cfg) == Resolution{128, 128});
    // Stateless: same answer twice.
    const BaselinePolicy p{AifsMode::same, ResolutionMode::max};
    CHECK(baseline_resolution(p, Direction::uplink, cfg) ==
          baseline_resolution(p, Direction::uplink, cfg));
}

TEST_CASE("single uplink flow sees no collisions and matches the reserved airtime") {
    const SimConfig cfg = default_config();
    const ContentionConfig ccfg;
    const BaselinePolicy policy{AifsMode::same, ResolutionMode::max};
    const std::vector<VehicleState> states = {vehicle("a", true, false)};
    const std::map<std::string, LinkState> links = {{"a", link_at(173e6)}};

    ContentionState state(3, ccfg);
    double airtime = 0.0;
    long delivered = 0, collisions = 0;
    for (int p = 0; p < 100; ++p) { // 10 s
        const auto out = state.contend_period(states, links, policy, cfg, cfg.period_s);
        airtime += out.successful_airtime_s;
        delivered += out.flows.at("u:a").frames_delivered;
        collisions += out.collisions;
    }
    CHECK(collisions == 0);
    CHECK(delivered == 100); // one frame per period at the target rate
    const double latency = frame_latency(Resolution{640, 480}, 8.0, 173e6);
    CHECK(airtime == doctest::Approx(delivered * latency).epsilon(1e-9));
    // Same busy airtime a reservation of one frame per period would carry.
    CHECK(airtime / 10.0 == doctest::Approx(latency / cfg.period_s).epsilon(1e-9));
}

TEST_CASE("different AIFS prioritizes the server side under saturation") {
    SimConfig cfg = default_config();
    cfg.fps0 = 100.0; // offered load far above capacity: both flows backlogged
    const ContentionConfig ccfg;
    const BaselinePolicy policy{AifsMode::different, ResolutionMode::max};
    const std::vector<VehicleState> states = {vehicle("up", true, false),
                                              vehicle("down", false, true)};
    const std::map<std::string, LinkState> links = {{"up", link_at(173e6)},
                                                    {"down", link_at(173e6)}};

    ContentionState state(5, ccfg);
    long up = 0, down = 0;
    for (int p = 0; p < 100; ++p) {
        const auto out = state.contend_period(states, links, policy, cfg, cfg.period_s);
        up += out.flows.at("u:up").frames_delivered;
        down += out.flows.at("d:down").frames_delivered;
    }
    CHECK(down > up);
}

TEST_CASE("a slow saturated uplink loses badly to a fast downlink in DIFFERENT mode") {
    SimConfig cfg = default_config();
    cfg.fps0 = 100.0;
    const ContentionConfig ccfg;
    const BaselinePolicy policy{AifsMode::different, ResolutionMode::max};
    const std::vector<VehicleState> states = {vehicle("up", true, false),
                                              vehicle("down", false, true)};
    // 84.7 ms uplink frames against prioritized 14.2 ms downlink frames.
    const std::map<std::string, LinkState> links = {{"up", link_at(29e6)},
                                                    {"down", link_at(173e6)}};
    ContentionState state(5, ccfg);
    long up = 0, down = 0;
    for (int p = 0; p < 100; ++p) {
        const auto out = state.contend_period(states, links, policy, cfg, cfg.period_s);
        up += out.flows.at("u:up").frames_delivered;
        down += out.flows.at("d:down").frames_delivered;
    }
    CHECK(down > 5 * up);
}

TEST_CASE("two identical station flows split the channel about evenly") {
    const SimConfig cfg = default_config();
    const ContentionConfig ccfg;
    const BaselinePolicy policy{AifsMode::same, ResolutionMode::max};
    const std::vector<VehicleState> states = {vehicle("a", true, false),
                                              vehicle("b", true, false)};
    const std::map<std::string, LinkState> links = {{"a", link_at(260e6)},
                                                    {"b", link_at(260e6)}};

    ContentionState state(1, ccfg);
    long da = 0, db = 0;
    for (int p = 0; p < 100; ++p) {
        const auto out = state.contend_period(states, links, policy, cfg, cfg.period_s);
        da += out.flows.at("u:a").frames_delivered;
        db += out.flows.at("u:b").frames_delivered;
    }
    CHECK(std::abs(da - db) <= 0.1 * std::max(da, db));
}

TEST_CASE("work conservation per period") {
    const SimConfig cfg = default_config();
    const ContentionConfig ccfg;
    const BaselinePolicy policy{AifsMode::same, ResolutionMode::max};
    std::vector<VehicleState> states;
    std::map<std::string, LinkState> links;
    const double rates[] = {29e6, 87e6, 173e6, 289e6};
    for (int i = 0; i < 8; ++i) {
        const std::string id = "v" + std::to_string(i);
        states.push_back(vehicle(id, i % 2 == 0, i % 2 == 1));
        links.emplace(id, link_at(rates[i % 4]));
    }
    ContentionState state(11, ccfg);
    for (int p = 0; p < 50; ++p) {
        const auto out = state.contend_period(states, links, policy, cfg, cfg.period_s);
        const double accounted = out.successful_airtime_s + out.wasted_airtime_s +
                                 out.idle_s + out.pending_delta_s;
        CHECK(accounted == doctest::Approx(cfg.period_s).epsilon(1e-9));
    }
}

TEST_CASE("contention is deterministic per seed") {
    const SimConfig cfg = default_config();
    const ContentionConfig ccfg;
    const BaselinePolicy policy{AifsMode::same, ResolutionMode::min};
    std::vector<VehicleState> states;
    std::map<std::string, LinkState> links;
    for (int i = 0; i < 6; ++i) {
        const std::string id = "v" + std::to_string(i);
        states.push_back(vehicle(id, true, true));
        links.emplace(id, link_at(173e6));
    }
    const auto once = contend_period(states, links, policy, ccfg, cfg, cfg.period_s, 42);
    const auto twice = contend_period(states, links, policy, ccfg, cfg, cfg.period_s, 42);
    CHECK(once.successful_airtime_s == twice.successful_airtime_s);
    CHECK(once.collisions == twice.collisions);
    REQUIRE(once.flows.size() == twice.flows.size());
    for (const auto& [key, st] : once.flows) {
        CHECK(twice.flows.at(key).frames_delivered == st.frames_delivered);
        CHECK(twice.flows.at(key).successful_airtime_s == st.successful_airtime_s);
    }
    const auto other = contend_period(states, links, policy, ccfg, cfg, cfg.period_s, 43);
    CHECK((other.successful_airtime_s != once.successful_airtime_s ||
           other.collisions != once.collisions));
}

TEST_CASE("saturated contention wastes airtime that reservation would use") {
    const SimConfig cfg = default_config();
    const ContentionConfig ccfg;
    const BaselinePolicy policy{AifsMode::same, ResolutionMode::max};
    std::vector<VehicleState> states;
    std::map<std::string, LinkState> links;
    for (int i = 0; i < 20; ++i) {
        const std::string id = (i < 10 ? "u" : "d") + std::to_string(i % 10);
        states.push_back(vehicle(id, i < 10, i >= 10));
        links.emplace(id, link_at(i % 2 == 0 ? 173e6 : 116e6));
    }
    ContentionState state(17, ccfg);
    double success = 0.0, wasted = 0.0;
    for (int p = 0; p < 100; ++p) {
        const auto out = state.contend_period(states, links, policy, cfg, cfg.period_s);
        success += out.successful_airtime_s;
        wasted += out.wasted_airtime_s;
    }
    CHECK(success / 10.0 < 0.5); // collisions dominate at this load
    CHECK(wasted > success);
}
