// Trajectory ingestion and synthesis: drone-dataset CSV files (25 Hz tracks)
// and deterministic synthetic scenarios for tests and sweeps.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fair/scenario.hpp"

namespace fair {

enum class AgentClass { car, truck, van, bus, pedestrian, bicycle, motorcycle };

AgentClass agent_class_from_string(const std::string& s);
const char* to_string(AgentClass c);
bool is_vehicle(AgentClass c);

struct TrajectoryPoint {
    int frame_index = 0; // native recording frame, 25 Hz
    double x = 0.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;

    double speed() const;
    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

enum class Role { ucv, dcv, both };

const char* to_string(Role r);
Role role_from_string(const std::string& s);

struct Track {
    AgentClass agent_class = AgentClass::car;
    std::vector<TrajectoryPoint> points; // strictly increasing frame_index

    friend bool operator==(const Track&, const Track&) = default;
};

struct Scenario {
    std::map<std::string, Track> tracks;
    std::map<std::string, Role> roles; // one entry per track
    double server_x = 0.0;
    double server_y = 0.0;
    double time_origin_s = 0.0;
    double native_fps = 25.0;

    // Latest point time across tracks, relative to time_origin.
    double duration_s() const;
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Column-name mapping with defaults matching the public drone datasets.
struct CsvSchema {
    std::string track_id = "trackId";
    std::string frame = "frame";
    std::string x = "xCenter";
    std::string y = "yCenter";
    std::string vx = "xVelocity";
    std::string vy = "yVelocity";
    std::string agent_class = "class";
    std::string role = "role"; // optional column; alternate UCV/DCV when absent
};

// Loads a trajectory CSV. Pedestrians, bicycles and motorcycles are dropped;
// points are sorted per track by frame index. Throws SchemaError on missing
// columns, ParseError on bad cells, EmptyScenario when no vehicle track
// survives filtering.
Scenario load_csv(const std::string& path, const CsvSchema& schema = {});

// Writes the same schema (plus the role column) so scenarios round-trip.
void write_csv(const Scenario& scenario, const std::string& path,
               const CsvSchema& schema = {});

// States of all tracks alive at time t: zero-order hold on the latest native
// frame at or before t. Throws OutOfRange when t is outside every track.
std::vector<VehicleState> sample_states(const Scenario& scenario, double t,
                                        const SimConfig& cfg);

enum class SynthPattern { constant_speed_ring, stop_and_go, highway_pass };

SynthPattern pattern_from_string(const std::string& s);

// Deterministic synthetic scenario. Patterns:
//  - constant_speed_ring: orbits at 5.5..8 m radius, speeds 2..17.7 m/s
//  - stop_and_go: straight lanes, 4..12 m/s with periodic full stops
//  - highway_pass: straight lanes, 24..33 m/s (above the highway trigger)
// The server sits at the centroid of all generated points.
Scenario synthesize(SynthPattern pattern, int n_ucv, int n_dcv, double duration_s,
                    std::uint64_t seed);

} // namespace fair
