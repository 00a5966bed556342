// Reporting: comparison tables and plot-ready CSV series from run ledgers.
#pragma once

#include <string>
#include <vector>

#include "fair/metrics.hpp"

namespace fair {

struct SummaryRow {
    std::string baseline; // algorithm name compared against
    double utilization_ratio = 0.0; // fair / baseline
    double fps_ucv_ratio = 0.0;
    double fps_dcv_ratio = 0.0;
    double q_u_delta = 0.0; // fair - baseline
    double q_d_delta = 0.0;
};

struct Summary {
    std::string scenario_name;
    double fair_utilization = 0.0;
    std::vector<SummaryRow> rows;
};

// Writes one CSV per comparison table plus one per-run vehicle time series
// (speed, SNR, rate, grant, energy, utilization, resolution), and a JSON
// manifest listing the emitted files with content hashes. Floats printed at
// 6 significant digits; byte-identical output for identical input.
// Returns the emitted file names.
std::vector<std::string> emit_csv(const std::vector<MetricsLedger>& ledgers,
                                  const std::string& out_dir);

// Ratio table of exactly one FAIR ledger against one or more baseline
// ledgers over the same scenario. Throws MismatchedScenario otherwise.
Summary emit_summary(const std::vector<MetricsLedger>& ledgers);

// 64-bit FNV-1a, used for the manifest content hashes.
std::uint64_t fnv1a64(const std::string& bytes);

// "%.6g" formatting shared by every table (stable bytes across runs).
std::string format_float(double v);

} // namespace fair
