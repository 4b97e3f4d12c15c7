#pragma once

#include <filesystem>

#include <json.hpp>

#include "rglt/config.hpp"

namespace rglt {

/// Exit codes shared with the command line front end.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kNumericalFailure = 3,
    kTrendFailure = 4,
};

/// Per-n table of d_n^Omega, its ratio to N(n), the 2 max(h) boundary band
/// and the |D(n,2)| count; writes counts.csv and summary.json.
nlohmann::json run_counts(const RunConfig& config, const std::filesystem::path& outdir);

/// Assembles per method, scales (n^-2 for Shortley-Weller, none otherwise)
/// and writes the sorted spectrum of each level as CSV with a JSON sidecar.
nlohmann::json run_spectrum(const RunConfig& config, const std::filesystem::path& outdir);

/// verify_lambda / verify_sigma against the method's derived symbol; writes
/// per-n reports and the trend verdict. Returns the summary; the caller maps
/// trend_ok == false to exit code 4.
nlohmann::json run_compare(const RunConfig& config, const std::filesystem::path& outdir);

/// p(A_n - B_n) per n, the d_acs estimate, and pmea of the sampled symbol
/// difference for the two configured sequences.
nlohmann::json run_acs(const RunConfig& config_a, const RunConfig& config_b,
                       const std::filesystem::path& outdir);

/// Parallelism cap honored by the per-n sweep loops (RGLT_THREADS).
int sweep_thread_cap();

}  // namespace rglt
