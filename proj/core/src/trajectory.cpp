#include "fair/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace fair {

AgentClass agent_class_from_string(const std::string& s) {
    if (s == "car") return AgentClass::car;
    if (s == "truck" || s == "truck_bus") return AgentClass::truck;
    if (s == "van") return AgentClass::van;
    if (s == "bus") return AgentClass::bus;
    if (s == "pedestrian") return AgentClass::pedestrian;
    if (s == "bicycle") return AgentClass::bicycle;
    if (s == "motorcycle") return AgentClass::motorcycle;
    throw SimError("unknown agent class: " + s);
}

const char* to_string(AgentClass c) {
    switch (c) {
        case AgentClass::car: return "car";
        case AgentClass::truck: return "truck";
        case AgentClass::van: return "van";
        case AgentClass::bus: return "bus";
        case AgentClass::pedestrian: return "pedestrian";
        case AgentClass::bicycle: return "bicycle";
        case AgentClass::motorcycle: return "motorcycle";
    }
    return "?";
}

bool is_vehicle(AgentClass c) {
    return c == AgentClass::car || c == AgentClass::truck || c == AgentClass::van ||
           c == AgentClass::bus;
}

double TrajectoryPoint::speed() const { return std::hypot(vx, vy); }

const char* to_string(Role r) {
    switch (r) {
        case Role::ucv: return "ucv";
        case Role::dcv: return "dcv";
        case Role::both: return "both";
    }
    return "?";
}

Role role_from_string(const std::string& s) {
    if (s == "ucv") return Role::ucv;
    if (s == "dcv") return Role::dcv;
    if (s == "both") return Role::both;
    throw SimError("unknown role: " + s);
}

double Scenario::duration_s() const {
    double last = time_origin_s;
    for (const auto& [id, track] : tracks)
        if (!track.points.empty())
            last = std::max(last, track.points.back().frame_index / native_fps);
    return last - time_origin_s;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (ch != '\r') {
            cell.push_back(ch);
        }
    }
    cells.push_back(cell);
    return cells;
}

double parse_double(const std::string& cell, std::size_t row, const std::string& column) {
    try {
        std::size_t consumed = 0;
        const double v = std::stod(cell, &consumed);
        if (consumed != cell.size() || !std::isfinite(v))
            throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad numeric value '" + cell + "' in column " + column +
                             " at row " + std::to_string(row),
                         row, column);
    }
}

// Centroid over the final track map; both the loader and the synthesizer use
// this so a written-then-reloaded scenario reproduces the same value bit for
// bit.
void finalize(Scenario& s) {
    double sx = 0, sy = 0;
    long n = 0;
    double first = std::numeric_limits<double>::max();
    for (const auto& [id, track] : s.tracks) {
        for (const TrajectoryPoint& p : track.points) {
            sx += p.x;
            sy += p.y;
            ++n;
        }
        if (!track.points.empty())
            first = std::min(first, track.points.front().frame_index / s.native_fps);
    }
    if (n > 0) {
        s.server_x = sx / n;
        s.server_y = sy / n;
        s.time_origin_s = first;
    }
}

} // namespace

Scenario load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trajectory file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty trajectory file: " + path);
    const auto header = split_csv_line(line);
    const auto col = [&](const std::string& name, bool required) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            if (required) throw SchemaError("missing column '" + name + "' in " + path);
            return static_cast<std::ptrdiff_t>(-1);
        }
        return it - header.begin();
    };
    const auto c_id = col(schema.track_id, true);
    const auto c_frame = col(schema.frame, true);
    const auto c_x = col(schema.x, true);
    const auto c_y = col(schema.y, true);
    const auto c_vx = col(schema.vx, true);
    const auto c_vy = col(schema.vy, true);
    const auto c_class = col(schema.agent_class, true);
    const auto c_role = col(schema.role, false);

    Scenario scenario;
    std::map<std::string, Role> file_roles;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() < header.size())
            throw ParseError("row " + std::to_string(row) + " has " +
                                 std::to_string(cells.size()) + " cells, header has " +
                                 std::to_string(header.size()),
                             row, "");
        AgentClass cls;
        try {
            cls = agent_class_from_string(cells[c_class]);
        } catch (const SimError& e) {
            throw ParseError(std::string(e.what()) + " at row " + std::to_string(row), row,
                             schema.agent_class);
        }
        if (!is_vehicle(cls)) continue; // pedestrians, bicycles, motorcycles dropped

        const std::string id = cells[c_id];
        TrajectoryPoint p;
        p.frame_index = static_cast<int>(parse_double(cells[c_frame], row, schema.frame));
        if (p.frame_index < 0)
            throw ParseError("negative frame index at row " + std::to_string(row), row,
                             schema.frame);
        p.x = parse_double(cells[c_x], row, schema.x);
        p.y = parse_double(cells[c_y], row, schema.y);
        p.vx = parse_double(cells[c_vx], row, schema.vx);
        p.vy = parse_double(cells[c_vy], row, schema.vy);
        Track& track = scenario.tracks[id];
        track.agent_class = cls;
        track.points.push_back(p);
        if (c_role >= 0 && !cells[c_role].empty()) {
            try {
                file_roles[id] = role_from_string(cells[c_role]);
            } catch (const SimError& e) {
                throw ParseError(std::string(e.what()) + " at row " + std::to_string(row),
                                 row, schema.role);
            }
        }
    }
    if (scenario.tracks.empty())
        throw EmptyScenario("no vehicle tracks left after filtering: " + path);

    for (auto& [id, track] : scenario.tracks) {
        std::sort(track.points.begin(), track.points.end(),
                  [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
                      return a.frame_index < b.frame_index;
                  });
        for (std::size_t i = 1; i < track.points.size(); ++i)
            if (track.points[i].frame_index == track.points[i - 1].frame_index)
                throw ParseError("duplicate frame " +
                                     std::to_string(track.points[i].frame_index) +
                                     " for track " + id,
                                 0, schema.frame);
    }

    // Roles: from the file when given, otherwise alternate over sorted ids.
    std::size_t i = 0;
    for (const auto& [id, track] : scenario.tracks) {
        const auto it = file_roles.find(id);
        scenario.roles[id] = it != file_roles.end() ? it->second
                             : (i % 2 == 0 ? Role::ucv : Role::dcv);
        ++i;
    }

    finalize(scenario);
    return scenario;
}

void write_csv(const Scenario& scenario, const std::string& path, const CsvSchema& schema) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write trajectory file: " + path);
    out << schema.track_id << ',' << schema.frame << ',' << schema.x << ',' << schema.y
        << ',' << schema.vx << ',' << schema.vy << ',' << schema.agent_class << ','
        << schema.role << '\n';
    char buf[32];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (const auto& [id, track] : scenario.tracks) {
        const Role role = scenario.roles.count(id) ? scenario.roles.at(id) : Role::ucv;
        for (const TrajectoryPoint& p : track.points) {
            out << id << ',' << p.frame_index << ',';
            num(p.x);
            out << ',';
            num(p.y);
            out << ',';
            num(p.vx);
            out << ',';
            num(p.vy);
            out << ',' << to_string(track.agent_class) << ',' << to_string(role) << '\n';
        }
    }
}

std::vector<VehicleState> sample_states(const Scenario& scenario, double t,
                                        const SimConfig& cfg) {
    const double t0 = scenario.time_origin_s;
    const double t1 = t0 + scenario.duration_s();
    if (t < t0 - 1e-9 || t > t1 + 1e-9)
        throw OutOfRange("sample time " + std::to_string(t) + " outside scenario span [" +
                         std::to_string(t0) + ", " + std::to_string(t1) + "]");

    std::vector<VehicleState> states;
    for (const auto& [id, track] : scenario.tracks) {
        if (track.points.empty()) continue;
        const double first = track.points.front().frame_index / scenario.native_fps;
        const double last = track.points.back().frame_index / scenario.native_fps;
        if (t < first || t > last) continue; // not yet spawned or departed

        // Zero-order hold: latest native frame at or before t.
        const auto it = std::upper_bound(
            track.points.begin(), track.points.end(), t,
            [&](double value, const TrajectoryPoint& p) {
                return value < p.frame_index / scenario.native_fps;
            });
        const TrajectoryPoint& p = *std::prev(it);

        VehicleState v;
        v.vehicle_id = id;
        v.time_s = t;
        v.x = p.x;
        v.y = p.y;
        v.speed = p.speed();
        const Role role = scenario.roles.count(id) ? scenario.roles.at(id) : Role::ucv;
        v.is_ucv = role != Role::dcv;
        v.is_dcv = role != Role::ucv;
        v.uplink_weights = cfg.uplink_weights;
        v.downlink_weights = cfg.downlink_weights;
        states.push_back(std::move(v));
    }
    return states;
}

SynthPattern pattern_from_string(const std::string& s) {
    if (s == "constant_speed_ring") return SynthPattern::constant_speed_ring;
    if (s == "stop_and_go") return SynthPattern::stop_and_go;
    if (s == "highway_pass") return SynthPattern::highway_pass;
    throw InvalidPattern("unknown synthetic pattern: " + s);
}

namespace {

double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa draw; std distributions are implementation-defined.
    return (rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

std::string synth_id(Role role, int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s%03d", role == Role::ucv ? "ucv" : "dcv", i);
    return buf;
}

} // namespace

Scenario synthesize(SynthPattern pattern, int n_ucv, int n_dcv, double duration_s,
                    std::uint64_t seed) {
    if (n_ucv < 0 || n_dcv < 0 || duration_s <= 0)
        throw InvalidPattern("synthesize: counts must be >= 0 and duration > 0");
    std::mt19937_64 rng(seed);
    Scenario scenario;
    const int frames = static_cast<int>(duration_s * scenario.native_fps);
    const double dt = 1.0 / scenario.native_fps;

    const int total = n_ucv + n_dcv;
    for (int i = 0; i < total; ++i) {
        const Role role = i < n_ucv ? Role::ucv : Role::dcv;
        const std::string id = synth_id(role, role == Role::ucv ? i : i - n_ucv);
        Track track;
        track.agent_class = AgentClass::car;
        track.points.reserve(frames + 1);

        switch (pattern) {
            case SynthPattern::constant_speed_ring: {
                const double radius = uniform(rng, 5.5, 8.0);
                const double speed = uniform(rng, 2.0, 17.7);
                const double phase = uniform(rng, 0.0, 6.283185307179586);
                const double omega = speed / radius;
                for (int f = 0; f <= frames; ++f) {
                    const double a = phase + omega * (f * dt);
                    TrajectoryPoint p;
                    p.frame_index = f;
                    p.x = radius * std::cos(a);
                    p.y = radius * std::sin(a);
                    p.vx = -speed * std::sin(a);
                    p.vy = speed * std::cos(a);
                    track.points.push_back(p);
                }
                break;
            }
            case SynthPattern::stop_and_go: {
                const double lane = i % 2 == 0 ? 3.5 : -3.5;
                const double dir = i % 2 == 0 ? 1.0 : -1.0;
                const double speed = uniform(rng, 4.0, 12.0);
                const double go_s = uniform(rng, 4.0, 7.0);
                const double stop_s = uniform(rng, 2.0, 4.0);
                const double phase = uniform(rng, 0.0, go_s + stop_s);
                double x = uniform(rng, -30.0, 30.0);
                for (int f = 0; f <= frames; ++f) {
                    const double cycle_t = std::fmod(phase + f * dt, go_s + stop_s);
                    const bool moving = cycle_t < go_s;
                    TrajectoryPoint p;
                    p.frame_index = f;
                    p.x = x;
                    p.y = lane;
                    p.vx = moving ? dir * speed : 0.0;
                    p.vy = 0.0;
                    track.points.push_back(p);
                    if (moving) x += dir * speed * dt;
                }
                break;
            }
            case SynthPattern::highway_pass: {
                const double lane = i % 2 == 0 ? 3.5 : -3.5;
                const double dir = i % 2 == 0 ? 1.0 : -1.0;
                // The first vehicle is guaranteed above the highway trigger.
                const double speed =
                    i == 0 ? uniform(rng, 27.5, 33.0) : uniform(rng, 24.0, 33.0);
                double x = uniform(rng, -80.0, 80.0);
                for (int f = 0; f <= frames; ++f) {
                    TrajectoryPoint p;
                    p.frame_index = f;
                    p.x = x;
                    p.y = lane;
                    p.vx = dir * speed;
                    p.vy = 0.0;
                    track.points.push_back(p);
                    x += dir * speed * dt;
                }
                break;
            }
        }
        scenario.tracks.emplace(id, std::move(track));
        scenario.roles.emplace(id, role);
    }
    if (scenario.tracks.empty()) throw EmptyScenario("synthesize: no vehicles requested");
    finalize(scenario);
    return scenario;
}

} // namespace fair
