#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fair/config_io.hpp"

using namespace fair;
using nlohmann::json;

TEST_CASE("config json round trip") {
    ConfigBundle bundle;
    bundle.sim.period_s = 0.05;
    bundle.sim.tx_power_dbm = 23.0;
    bundle.energy.p_rev_w = 1.5;
    bundle.contention.cw_max = 255;

    const ConfigBundle back = config_from_json(to_json(bundle));
    CHECK(back.sim.period_s == 0.05);
    CHECK(back.sim.tx_power_dbm == 23.0);
    CHECK(back.energy.p_rev_w == 1.5);
    CHECK(back.energy.cam_poly == bundle.energy.cam_poly);
    CHECK(back.contention.cw_max == 255);
    CHECK(back.contention.txop_limit_s == bundle.contention.txop_limit_s);
    CHECK(back.sim.uplink_resolutions == bundle.sim.uplink_resolutions);
    CHECK(back.rate_table.steps.size() == 8);
    CHECK(back.rate_table.steps.back().rate_bps == 289e6);
}

TEST_CASE("angles are degrees on disk, radians in memory") {
    const json j = {{"camera_fov_theta_deg", 50.0}};
    const ConfigBundle bundle = config_from_json(j);
    CHECK(bundle.sim.camera_fov_rad == doctest::Approx(0.8726646259971648).epsilon(1e-12));
    const json out = to_json(bundle);
    CHECK(out.at("camera_fov_theta_deg").get<double>() == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("partial config files keep defaults for missing fields") {
    const ConfigBundle bundle = config_from_json(json{{"fps0", 20.0}});
    CHECK(bundle.sim.fps0 == 20.0);
    CHECK(bundle.sim.period_s == 0.1);
    CHECK(bundle.energy.p_pro_w == 1.97);
    CHECK(validate_config(bundle.sim).empty());
}

TEST_CASE("dotted-key overrides") {
    ConfigBundle bundle;
    apply_override(bundle, "period_T", "0.2");
    CHECK(bundle.sim.period_s == 0.2);
    apply_override(bundle, "energy.p_rev_w", "2.5");
    CHECK(bundle.energy.p_rev_w == 2.5);
    apply_override(bundle, "contention.txop_limit_s", "0.001");
    CHECK(bundle.contention.txop_limit_s == 0.001);
    apply_override(bundle, "default_weights.w2", "20");
    CHECK(bundle.sim.uplink_weights.w_utilization == 20.0);
    CHECK_THROWS_AS(apply_override(bundle, "no_such_key", "1"), SchemaError);
    CHECK_THROWS_AS(apply_override(bundle, "energy.no_such_key", "1"), SchemaError);
}

TEST_CASE("save and load a config file") {
    const auto path =
        (std::filesystem::temp_directory_path() / "fair_cfg_test.json").string();
    ConfigBundle bundle;
    bundle.sim.v_highway = 30.0;
    save_config(bundle, path);
    const ConfigBundle back = load_config(path);
    CHECK(back.sim.v_highway == 30.0);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_config("/nonexistent/path.json"), IoError);
}

TEST_CASE("bad rate tables are rejected") {
    json j;
    j["rate_table"] = json::array({json{{"min_snr_db", 5.0}, {"rate_mbps", 29.0}},
                                   json{{"min_snr_db", 2.0}, {"rate_mbps", 58.0}}});
    CHECK_THROWS_AS(config_from_json(j), SchemaError);
}
