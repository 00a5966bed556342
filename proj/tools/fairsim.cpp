// fairsim: batch driver for the vehicular edge resource-allocation simulator.
// Subcommands: validate, run, sweep, synth.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fair/config_io.hpp"
#include "fair/engine.hpp"
#include "fair/report.hpp"
#include "fair/trajectory.hpp"

using namespace fair;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides; // key=value
};

ConfigBundle resolve_config(const CommonOpts& opts) {
    ConfigBundle bundle;
    std::string path = opts.config_path;
    if (path.empty())
        if (const char* env = std::getenv("FAIRSIM_CONFIG")) path = env;
    if (!path.empty()) bundle = load_config(path);
    for (const std::string& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw SchemaError("override must be key=value: " + kv);
        apply_override(bundle, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return bundle;
}

std::vector<Algorithm> parse_algorithms(const std::string& csv) {
    std::vector<Algorithm> algos;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) algos.push_back(algorithm_from_string(item));
    if (algos.empty()) throw SimError("no algorithm given");
    return algos;
}

void write_atomic_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp);
        out << content;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + ": " + ec.message());
}

// Echoed into every output directory: config snapshot, overrides, and a
// content hash so reports are traceable to their exact inputs.
void write_run_meta(const std::string& out_dir, const ConfigBundle& bundle,
                    const CommonOpts& opts, const json& extra) {
    json meta = extra;
    meta["config"] = to_json(bundle);
    meta["overrides"] = opts.overrides;
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(meta.dump())));
    meta["spec_hash"] = hex;
    write_atomic_file((std::filesystem::path(out_dir) / "run_meta.json").string(),
                      meta.dump(2) + "\n");
}

std::shared_ptr<Scenario> load_scenario(const std::string& scenario_path,
                                        const std::string& pattern, int n_ucv, int n_dcv,
                                        double seconds, std::uint64_t seed) {
    if (!scenario_path.empty())
        return std::make_shared<Scenario>(load_csv(scenario_path));
    if (pattern.empty())
        throw SimError("either --scenario or --pattern is required");
    return std::make_shared<Scenario>(
        synthesize(pattern_from_string(pattern), n_ucv, n_dcv, seconds, seed));
}

int cmd_validate(const CommonOpts& opts) {
    const ConfigBundle bundle = resolve_config(opts);
    const ValidationReport report = validate_config(bundle.sim);
    if (report.empty()) {
        std::cout << "config OK\n";
        return 0;
    }
    for (const ValidationIssue& issue : report)
        std::cerr << "violation: " << issue.field << ": " << issue.message << "\n";
    return 1;
}

int cmd_run(const CommonOpts& opts, const std::string& scenario_path,
            const std::string& pattern, int n_ucv, int n_dcv, double synth_seconds,
            const std::string& algo_csv, const std::string& out_dir, std::uint64_t seed,
            double duration, const std::string& name) {
    const ConfigBundle bundle = resolve_config(opts);
    const auto algos = parse_algorithms(algo_csv);
    const auto scenario =
        load_scenario(scenario_path, pattern, n_ucv, n_dcv, synth_seconds, seed);
    const std::string scenario_name =
        !name.empty() ? name
        : !scenario_path.empty()
            ? std::filesystem::path(scenario_path).stem().string()
            : pattern;

    std::filesystem::create_directories(out_dir);
    std::vector<MetricsLedger> ledgers;
    for (const Algorithm algo : algos) {
        RunSpec spec;
        spec.scenario = scenario;
        spec.scenario_name = scenario_name;
        spec.algorithm = algo;
        spec.cfg = bundle.sim;
        spec.energy = bundle.energy;
        spec.contention = bundle.contention;
        spec.rate_table = bundle.rate_table;
        spec.duration_s = duration;
        spec.seed = seed;

        std::ostringstream audit;
        ledgers.push_back(run(spec, &audit));
        write_atomic_file((std::filesystem::path(out_dir) /
                           ("audit_" + std::string(to_string(algo)) + ".jsonl"))
                              .string(),
                          audit.str());
    }
    emit_csv(ledgers, out_dir);

    bool have_fair = false, have_other = false;
    for (const auto& l : ledgers) (l.meta.algorithm == "fair" ? have_fair : have_other) = true;
    if (have_fair && have_other) {
        const Summary summary = emit_summary(ledgers);
        std::ostringstream out;
        out << "baseline,utilization_ratio,fps_ucv_ratio,fps_dcv_ratio,q_u_delta,q_d_delta\n";
        for (const SummaryRow& row : summary.rows)
            out << row.baseline << ',' << format_float(row.utilization_ratio) << ','
                << format_float(row.fps_ucv_ratio) << ',' << format_float(row.fps_dcv_ratio)
                << ',' << format_float(row.q_u_delta) << ',' << format_float(row.q_d_delta)
                << '\n';
        write_atomic_file((std::filesystem::path(out_dir) / "summary.csv").string(),
                          out.str());
        for (const SummaryRow& row : summary.rows)
            std::cout << "fair vs " << row.baseline
                      << ": utilization x" << format_float(row.utilization_ratio)
                      << ", fps(ucv) x" << format_float(row.fps_ucv_ratio)
                      << ", fps(dcv) x" << format_float(row.fps_dcv_ratio) << "\n";
    }

    write_run_meta(out_dir, bundle, opts,
                   json{{"command", "run"},
                        {"scenario", scenario_name},
                        {"algorithms", algo_csv},
                        {"seed", seed}});
    std::cout << "wrote reports to " << out_dir << "\n";
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& pattern,
              const std::string& loads_csv, const std::string& weights_csv,
              const std::string& algo_csv, double seconds, const std::string& out_dir,
              std::uint64_t seed) {
    const ConfigBundle bundle = resolve_config(opts);
    const auto algos = parse_algorithms(algo_csv);

    std::vector<std::pair<int, int>> loads;
    {
        std::stringstream ss(loads_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto plus = item.find('+');
            if (plus == std::string::npos)
                throw SimError("load must be N_UCV+N_DCV: " + item);
            loads.emplace_back(std::stoi(item.substr(0, plus)),
                               std::stoi(item.substr(plus + 1)));
        }
    }
    std::vector<Weights> weight_points;
    if (!weights_csv.empty()) {
        std::stringstream ss(weights_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw SimError("weights must be W_ENERGY:W_UTIL: " + item);
            weight_points.push_back({std::stod(item.substr(0, colon)),
                                     std::stod(item.substr(colon + 1))});
        }
    } else {
        weight_points.push_back(bundle.sim.uplink_weights);
    }

    std::vector<RunSpec> specs;
    for (std::size_t li = 0; li < loads.size(); ++li) {
        const auto [nu, nd] = loads[li];
        const auto scenario = std::make_shared<Scenario>(synthesize(
            pattern_from_string(pattern), nu, nd, seconds, seed + li));
        for (const Weights& w : weight_points) {
            for (const Algorithm algo : algos) {
                RunSpec spec;
                spec.scenario = scenario;
                spec.scenario_name = pattern;
                spec.algorithm = algo;
                spec.cfg = bundle.sim;
                spec.cfg.uplink_weights = w;
                spec.cfg.downlink_weights = w;
                spec.energy = bundle.energy;
                spec.contention = bundle.contention;
                spec.rate_table = bundle.rate_table;
                spec.seed = seed;
                specs.push_back(std::move(spec));
            }
        }
    }
    const auto ledgers = sweep(specs);
    std::filesystem::create_directories(out_dir);
    emit_csv(ledgers, out_dir);
    write_run_meta(out_dir, bundle, opts,
                   json{{"command", "sweep"},
                        {"pattern", pattern},
                        {"loads", loads_csv},
                        {"weights", weights_csv},
                        {"algorithms", algo_csv},
                        {"seed", seed}});
    std::cout << "swept " << ledgers.size() << " runs into " << out_dir << "\n";
    return 0;
}

int cmd_synth(const std::string& pattern, int n_ucv, int n_dcv, double seconds,
              std::uint64_t seed, const std::string& out_path) {
    const Scenario scenario =
        synthesize(pattern_from_string(pattern), n_ucv, n_dcv, seconds, seed);
    const std::string tmp = out_path + ".tmp";
    write_csv(scenario, tmp);
    std::error_code ec;
    std::filesystem::rename(tmp, out_path, ec);
    if (ec) throw IoError("cannot rename " + tmp + ": " + ec.message());
    std::cout << "wrote " << scenario.tracks.size() << " tracks to " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-time simulator of symmetrical uplink/downlink resource "
                 "allocation for vehicular edge computing"};
    app.require_subcommand(1);

    CommonOpts common;

    auto* validate = app.add_subcommand("validate", "check a config file");
    validate->add_option("--config", common.config_path, "config JSON path");
    validate->add_option("--set", common.overrides, "override key=value (repeatable)");

    std::string scenario_path, pattern, algo_csv = "fair", out_dir = "out", name;
    int n_ucv = 4, n_dcv = 4;
    double synth_seconds = 30.0, duration = 0.0;
    std::uint64_t seed = 1;

    auto* run_cmd = app.add_subcommand("run", "run one scenario under one or more algorithms");
    run_cmd->add_option("--config", common.config_path, "config JSON path");
    run_cmd->add_option("--set", common.overrides, "override key=value (repeatable)");
    run_cmd->add_option("--scenario", scenario_path, "trajectory CSV path");
    run_cmd->add_option("--pattern", pattern,
                        "synthetic pattern (constant_speed_ring|stop_and_go|highway_pass)");
    run_cmd->add_option("--ucv", n_ucv, "synthetic UCV count");
    run_cmd->add_option("--dcv", n_dcv, "synthetic DCV count");
    run_cmd->add_option("--seconds", synth_seconds, "synthetic scenario length");
    run_cmd->add_option("--algo", algo_csv, "comma list: fair,sa_max,sa_min,da_max,da_min");
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--seed", seed, "run seed");
    run_cmd->add_option("--duration", duration, "simulated seconds (default: whole scenario)");
    run_cmd->add_option("--name", name, "scenario name used in reports");

    std::string loads_csv = "4+4,7+8,10+10", weights_csv;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a load/preference sweep");
    sweep_cmd->add_option("--config", common.config_path, "config JSON path");
    sweep_cmd->add_option("--set", common.overrides, "override key=value (repeatable)");
    sweep_cmd->add_option("--pattern", pattern, "synthetic pattern")->required();
    sweep_cmd->add_option("--loads", loads_csv, "comma list of N_UCV+N_DCV");
    sweep_cmd->add_option("--weights", weights_csv,
                          "comma list of W_ENERGY:W_UTIL preference points");
    sweep_cmd->add_option("--algo", algo_csv, "comma list of algorithms");
    sweep_cmd->add_option("--seconds", synth_seconds, "scenario length per load");
    sweep_cmd->add_option("--out", out_dir, "output directory");
    sweep_cmd->add_option("--seed", seed, "sweep seed");

    std::string synth_out = "scenario.csv";
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic trajectory CSV");
    synth_cmd->add_option("--pattern", pattern, "synthetic pattern")->required();
    synth_cmd->add_option("--ucv", n_ucv, "UCV count");
    synth_cmd->add_option("--dcv", n_dcv, "DCV count");
    synth_cmd->add_option("--seconds", synth_seconds, "scenario length");
    synth_cmd->add_option("--seed", seed, "generation seed");
    synth_cmd->add_option("--out", synth_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(common);
        if (run_cmd->parsed())
            return cmd_run(common, scenario_path, pattern, n_ucv, n_dcv, synth_seconds,
                           algo_csv, out_dir, seed, duration, name);
        if (sweep_cmd->parsed())
            return cmd_sweep(common, pattern, loads_csv, weights_csv, algo_csv,
                             synth_seconds, out_dir, seed);
        if (synth_cmd->parsed())
            return cmd_synth(pattern, n_ucv, n_dcv, synth_seconds, seed, synth_out);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
