// JSON wire formats: simulation config (angles in degrees on disk), energy
// parameters, contention parameters, and rate tables.
#pragma once

#include <string>

#include "fair/baseline.hpp"
#include "fair/energy.hpp"
#include "fair/radio.hpp"
#include "fair/scenario.hpp"

#include <json.hpp>

namespace fair {

// A full config file: the scenario-model fields plus optional "energy",
// "contention" and "rate_table" sections.
struct ConfigBundle {
    SimConfig sim = default_config();
    EnergyParams energy;
    ContentionConfig contention;
    RateTable rate_table = RateTable::default_80211n();
};

nlohmann::json to_json(const ConfigBundle& bundle);
ConfigBundle config_from_json(const nlohmann::json& j);

ConfigBundle load_config(const std::string& path);
void save_config(const ConfigBundle& bundle, const std::string& path);

// Applies one "dotted.key=value" override (e.g. "period_T=0.05",
// "energy.p_rev=1.2"). Throws SchemaError on unknown keys or bad values.
void apply_override(ConfigBundle& bundle, const std::string& key,
                    const std::string& value);

} // namespace fair
