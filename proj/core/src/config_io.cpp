#include "fair/config_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace fair {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

json ladder_to_json(const std::vector<Resolution>& ladder) {
    json arr = json::array();
    for (const Resolution& r : ladder) arr.push_back(json::array({r.k, r.s}));
    return arr;
}

std::vector<Resolution> ladder_from_json(const json& arr) {
    std::vector<Resolution> out;
    for (const auto& e : arr) out.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return out;
}

} // namespace

json to_json(const ConfigBundle& bundle) {
    const SimConfig& c = bundle.sim;
    json j;
    j["period_T"] = c.period_s;
    j["fps0"] = c.fps0;
    j["v_highway"] = c.v_highway;
    j["beta_unallocated"] = c.beta_unallocated;
    j["stop_offload_interval"] = c.stop_offload_interval;
    j["camera_fov_theta_deg"] = c.camera_fov_rad * 180.0 / kPi;
    j["camera_range_l"] = c.camera_range_m;
    j["color_depth_gamma"] = c.color_depth_bits;
    j["carrier_freq_f_mhz"] = c.carrier_freq_mhz;
    j["pathloss_exponent_n"] = c.pathloss_exponent;
    j["tx_power_dbm"] = c.tx_power_dbm;
    j["noise_floor_dbm"] = c.noise_floor_dbm;
    j["uplink_resolutions"] = ladder_to_json(c.uplink_resolutions);
    j["downlink_resolutions"] = ladder_to_json(c.downlink_resolutions);
    j["default_weights"] = json{{"w1", c.uplink_weights.w_energy},
                                {"w2", c.uplink_weights.w_utilization},
                                {"w1_bar", c.downlink_weights.w_energy},
                                {"w2_bar", c.downlink_weights.w_utilization}};

    const EnergyParams& e = bundle.energy;
    j["energy"] = json{{"p_pro_w", e.p_pro_w},
                       {"t_pro_s", e.t_pro_s},
                       {"p_tail_w", e.p_tail_w},
                       {"t_tail_s", e.t_tail_s},
                       {"ptr_slope_w_per_mbps", e.ptr_slope_w_per_mbps},
                       {"ptr_intercept_w", e.ptr_intercept_w},
                       {"cam_poly", e.cam_poly},
                       {"p_rev_w", e.p_rev_w},
                       {"coalesce_promotion_tail", e.coalesce_promotion_tail}};

    const ContentionConfig& n = bundle.contention;
    j["contention"] = json{{"aifsn_server", n.aifsn_server},
                           {"aifsn_station", n.aifsn_station},
                           {"slot_time_s", n.slot_time_s},
                           {"cw_min", n.cw_min},
                           {"cw_max", n.cw_max},
                           {"txop_limit_s", n.txop_limit_s}};

    json table = json::array();
    for (const RateStep& s : bundle.rate_table.steps)
        table.push_back(json{{"min_snr_db", s.min_snr_db}, {"rate_mbps", s.rate_bps / 1e6}});
    j["rate_table"] = table;
    return j;
}

ConfigBundle config_from_json(const json& j) {
    ConfigBundle bundle;
    SimConfig& c = bundle.sim;
    const auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("period_T", c.period_s);
    get("fps0", c.fps0);
    get("v_highway", c.v_highway);
    get("beta_unallocated", c.beta_unallocated);
    get("stop_offload_interval", c.stop_offload_interval);
    if (j.contains("camera_fov_theta_deg"))
        c.camera_fov_rad = j.at("camera_fov_theta_deg").get<double>() * kPi / 180.0;
    get("camera_range_l", c.camera_range_m);
    get("color_depth_gamma", c.color_depth_bits);
    get("carrier_freq_f_mhz", c.carrier_freq_mhz);
    get("pathloss_exponent_n", c.pathloss_exponent);
    get("tx_power_dbm", c.tx_power_dbm);
    get("noise_floor_dbm", c.noise_floor_dbm);
    if (j.contains("uplink_resolutions"))
        c.uplink_resolutions = ladder_from_json(j.at("uplink_resolutions"));
    if (j.contains("downlink_resolutions"))
        c.downlink_resolutions = ladder_from_json(j.at("downlink_resolutions"));
    if (j.contains("default_weights")) {
        const json& w = j.at("default_weights");
        if (w.contains("w1")) c.uplink_weights.w_energy = w.at("w1").get<double>();
        if (w.contains("w2")) c.uplink_weights.w_utilization = w.at("w2").get<double>();
        if (w.contains("w1_bar")) c.downlink_weights.w_energy = w.at("w1_bar").get<double>();
        if (w.contains("w2_bar"))
            c.downlink_weights.w_utilization = w.at("w2_bar").get<double>();
    }

    if (j.contains("energy")) {
        const json& e = j.at("energy");
        EnergyParams& p = bundle.energy;
        const auto eget = [&](const char* key, auto& field) {
            if (e.contains(key)) field = e.at(key).get<std::decay_t<decltype(field)>>();
        };
        eget("p_pro_w", p.p_pro_w);
        eget("t_pro_s", p.t_pro_s);
        eget("p_tail_w", p.p_tail_w);
        eget("t_tail_s", p.t_tail_s);
        eget("ptr_slope_w_per_mbps", p.ptr_slope_w_per_mbps);
        eget("ptr_intercept_w", p.ptr_intercept_w);
        eget("cam_poly", p.cam_poly);
        eget("p_rev_w", p.p_rev_w);
        eget("coalesce_promotion_tail", p.coalesce_promotion_tail);
    }
    if (j.contains("contention")) {
        const json& n = j.at("contention");
        ContentionConfig& p = bundle.contention;
        const auto nget = [&](const char* key, auto& field) {
            if (n.contains(key)) field = n.at(key).get<std::decay_t<decltype(field)>>();
        };
        nget("aifsn_server", p.aifsn_server);
        nget("aifsn_station", p.aifsn_station);
        nget("slot_time_s", p.slot_time_s);
        nget("cw_min", p.cw_min);
        nget("cw_max", p.cw_max);
        nget("txop_limit_s", p.txop_limit_s);
    }
    if (j.contains("rate_table")) {
        bundle.rate_table.steps.clear();
        for (const auto& e : j.at("rate_table"))
            bundle.rate_table.steps.push_back(
                {e.at("min_snr_db").get<double>(), e.at("rate_mbps").get<double>() * 1e6});
        if (!bundle.rate_table.valid())
            throw SchemaError("rate_table: thresholds and rates must be strictly increasing");
    }
    return bundle;
}

ConfigBundle load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError("config parse error in " + path + ": " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw SchemaError("config field error in " + path + ": " + e.what());
    }
}

void save_config(const ConfigBundle& bundle, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write config file: " + tmp);
        out << to_json(bundle).dump(2) << '\n';
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + ": " + ec.message());
}

void apply_override(ConfigBundle& bundle, const std::string& key, const std::string& value) {
    json j = to_json(bundle);
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::exception&) {
        parsed = value; // plain string
    }
    // Dotted keys address nested sections: "energy.p_rev_w=1.2".
    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = key.find('.', start);
        const std::string part = key.substr(start, dot - start);
        if (!node->contains(part))
            throw SchemaError("unknown config key: " + key);
        if (dot == std::string::npos) {
            (*node)[part] = parsed;
            break;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
    try {
        bundle = config_from_json(j);
    } catch (const json::exception& e) {
        throw SchemaError("bad override value for " + key + ": " + e.what());
    }
}

} // namespace fair
