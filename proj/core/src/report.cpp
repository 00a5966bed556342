#include "fair/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fair/errors.hpp"

namespace fair {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Algorithms in a fixed column order, restricted to those present.
std::vector<std::string> algorithm_columns(const std::vector<MetricsLedger>& ledgers) {
    const std::vector<std::string> order = {"fair", "sa_max", "sa_min", "da_max", "da_min"};
    std::vector<std::string> cols;
    for (const std::string& a : order)
        for (const MetricsLedger& l : ledgers)
            if (l.meta.algorithm == a) {
                if (std::find(cols.begin(), cols.end(), a) == cols.end()) cols.push_back(a);
                break;
            }
    return cols;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp);
        out << content;
        if (!out) throw IoError("short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

struct LoadKey {
    std::string scenario;
    int n_ucv;
    int n_dcv;
    std::string weights;
    auto operator<=>(const LoadKey&) const = default;
};

std::string resolution_label(const VehiclePeriodRecord& row) {
    return row.selected ? row.resolution.label() : "";
}

} // namespace

std::vector<std::string> emit_csv(const std::vector<MetricsLedger>& ledgers,
                                  const std::string& out_dir) {
    if (ledgers.empty()) throw SimError("emit_csv: no ledgers");
    std::filesystem::create_directories(out_dir);

    const auto cols = algorithm_columns(ledgers);
    std::map<LoadKey, std::map<std::string, const MetricsLedger*>> by_load;
    for (const MetricsLedger& l : ledgers)
        by_load[{l.meta.scenario_name, l.meta.n_ucv, l.meta.n_dcv, l.meta.weights_label}]
               [l.meta.algorithm] = &l;

    std::vector<std::pair<std::string, std::string>> files; // name -> content

    const auto pivot = [&](const std::string& name, const std::string& extra_col,
                           auto&& cell) {
        std::ostringstream out;
        out << "scenario,n_ucv,n_dcv,weights";
        if (!extra_col.empty()) out << ',' << extra_col;
        for (const std::string& a : cols) out << ',' << a;
        out << '\n';
        for (const auto& [key, algos] : by_load) {
            const std::vector<std::string> variants =
                extra_col.empty() ? std::vector<std::string>{""} :
                extra_col == "role" ? std::vector<std::string>{"ucv", "dcv"}
                                    : std::vector<std::string>{"q_u", "q_d"};
            for (const std::string& variant : variants) {
                out << csv_escape(key.scenario) << ',' << key.n_ucv << ',' << key.n_dcv
                    << ',' << csv_escape(key.weights);
                if (!extra_col.empty()) out << ',' << variant;
                for (const std::string& a : cols) {
                    out << ',';
                    const auto it = algos.find(a);
                    if (it != algos.end()) out << format_float(cell(*it->second, variant));
                }
                out << '\n';
            }
        }
        files.emplace_back(name, out.str());
    };

    pivot("utilization_vs_load.csv", "", [](const MetricsLedger& l, const std::string&) {
        return l.aggregates.run_avg_utilization;
    });
    pivot("fps_vs_load.csv", "role", [](const MetricsLedger& l, const std::string& role) {
        return role == "ucv" ? l.aggregates.avg_fps_ucv : l.aggregates.avg_fps_dcv;
    });
    pivot("q_vs_load.csv", "metric", [](const MetricsLedger& l, const std::string& m) {
        return m == "q_u" ? l.aggregates.mean_q_u : l.aggregates.mean_q_d;
    });

    {
        // One long-format row per run with every aggregate, for traceability.
        std::ostringstream out;
        out << "algorithm,scenario,n_ucv,n_dcv,weights,seed,duration_s,"
               "run_avg_utilization,avg_fps_ucv,avg_fps_dcv,mean_q_u,mean_q_d,"
               "mean_frame_energy_u,mean_frame_energy_d,lifetime_energy_j,"
               "total_frames_u,total_frames_d,total_collisions\n";
        for (const MetricsLedger& l : ledgers) {
            const LedgerAggregates& a = l.aggregates;
            out << l.meta.algorithm << ',' << csv_escape(l.meta.scenario_name) << ','
                << l.meta.n_ucv << ',' << l.meta.n_dcv << ','
                << csv_escape(l.meta.weights_label) << ',' << l.meta.seed << ','
                << format_float(l.meta.duration_s) << ','
                << format_float(a.run_avg_utilization) << ','
                << format_float(a.avg_fps_ucv) << ',' << format_float(a.avg_fps_dcv) << ','
                << format_float(a.mean_q_u) << ',' << format_float(a.mean_q_d) << ','
                << format_float(a.mean_frame_energy_u) << ','
                << format_float(a.mean_frame_energy_d) << ','
                << format_float(a.lifetime_energy_j) << ',' << a.total_frames_u << ','
                << a.total_frames_d << ',' << a.total_collisions << '\n';
        }
        files.emplace_back("metrics.csv", out.str());
    }

    for (std::size_t i = 0; i < ledgers.size(); ++i) {
        // The per-vehicle panel set: speed, SNR, rate, grant, energy,
        // utilization, resolution over time.
        const MetricsLedger& l = ledgers[i];
        std::ostringstream out;
        out << "period,time_s,vehicle_id,direction,case,speed,snr_db,rate_mbps,"
               "grant_ms,frames,fps,frame_energy_j,utilization,resolution\n";
        for (const VehiclePeriodRecord& row : l.vehicle_series) {
            out << row.period << ',' << format_float(row.time_s) << ','
                << csv_escape(row.vehicle_id) << ',' << to_string(row.direction) << ','
                << (row.direction == Direction::uplink ? to_string(row.label) : "") << ','
                << format_float(row.speed) << ',' << format_float(row.snr_db) << ','
                << format_float(row.rate_bps / 1e6) << ','
                << format_float(row.grant_s * 1e3) << ',' << row.frames << ','
                << format_float(row.fps) << ',' << format_float(row.frame_energy_j) << ','
                << format_float(row.utilization) << ',' << resolution_label(row) << '\n';
        }
        char name[64];
        std::snprintf(name, sizeof name, "timeseries_%02zu_%s.csv", i,
                      l.meta.algorithm.c_str());
        files.emplace_back(name, out.str());
    }

    json manifest;
    manifest["format_version"] = 1;
    manifest["hash"] = "fnv1a64";
    manifest["definitions"] = json{
        {"channel_utilization",
         "per period: airtime carrying successfully delivered frames / period_T; "
         "reservation runs count min(grant, frames x frame latency) per grant, "
         "contention runs count airtime of frames that survived to delivery"},
        {"p_rev_w", "receive power is a modeled constant, not a measured value"}};
    json entries = json::array();
    for (const auto& [name, content] : files) {
        char hex[32];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(content)));
        entries.push_back(json{{"file", name}, {"fnv1a64", hex}, {"bytes", content.size()}});
    }
    manifest["files"] = entries;
    files.emplace_back("manifest.json", manifest.dump(2) + "\n");

    std::vector<std::string> names;
    for (const auto& [name, content] : files) {
        write_atomic((std::filesystem::path(out_dir) / name).string(), content);
        names.push_back(name);
    }
    return names;
}

Summary emit_summary(const std::vector<MetricsLedger>& ledgers) {
    const MetricsLedger* fair_ledger = nullptr;
    for (const MetricsLedger& l : ledgers)
        if (l.meta.algorithm == "fair") {
            fair_ledger = &l;
            break;
        }
    if (!fair_ledger) throw MismatchedScenario("emit_summary: no fair ledger");

    Summary summary;
    summary.scenario_name = fair_ledger->meta.scenario_name;
    summary.fair_utilization = fair_ledger->aggregates.run_avg_utilization;

    const auto ratio = [](double a, double b) {
        return b != 0.0 ? a / b : std::numeric_limits<double>::infinity();
    };
    for (const MetricsLedger& l : ledgers) {
        if (&l == fair_ledger) continue;
        if (l.meta.scenario_name != fair_ledger->meta.scenario_name ||
            l.meta.n_ucv != fair_ledger->meta.n_ucv ||
            l.meta.n_dcv != fair_ledger->meta.n_dcv)
            throw MismatchedScenario("emit_summary: ledger " + l.meta.algorithm +
                                     " ran a different scenario");
        SummaryRow row;
        row.baseline = l.meta.algorithm;
        row.utilization_ratio = ratio(fair_ledger->aggregates.run_avg_utilization,
                                      l.aggregates.run_avg_utilization);
        row.fps_ucv_ratio = ratio(fair_ledger->aggregates.avg_fps_ucv, l.aggregates.avg_fps_ucv);
        row.fps_dcv_ratio = ratio(fair_ledger->aggregates.avg_fps_dcv, l.aggregates.avg_fps_dcv);
        row.q_u_delta = fair_ledger->aggregates.mean_q_u - l.aggregates.mean_q_u;
        row.q_d_delta = fair_ledger->aggregates.mean_q_d - l.aggregates.mean_q_d;
        summary.rows.push_back(std::move(row));
    }
    if (summary.rows.empty())
        throw MismatchedScenario("emit_summary: no ledger to compare against");
    return summary;
}

} // namespace fair
