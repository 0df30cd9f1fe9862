#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qdev/config.hpp"
#include "qdev/experiments.hpp"

namespace qdev {

/// Shortest decimal string that parses back to the same binary64 value.
std::string format_double(double v);

/// Comma-separated table with a header row; every value via format_double.
std::string csv_table(const std::string& header, const std::vector<std::vector<double>>& columns);

/// Energies at which transmission_<bias>.csv samples T(E): `points` values from
/// just above the lower contact edge up to the edge + E_cut.
std::vector<double> transmission_energies(const SelfConsistentResult& result, double energy_cutoff, int points);

struct RunOutcome {
    std::vector<SelfConsistentResult> results;
    std::vector<ConvergenceReport> convergence;
    std::vector<std::filesystem::path> files;
    bool all_converged = true;
};

/// Executes a run configuration and writes the requested files into
/// config.output_dir (created if missing).
RunOutcome run(const RunConfig& config);

/// Convergence study only: writes convergence.csv and summary.json.
RunOutcome run_convergence(const RunConfig& config);

/// Machine-readable failure record {"error": kind, "message": ...}.
std::string error_json(const std::string& kind, const std::string& message);

}  // namespace qdev
