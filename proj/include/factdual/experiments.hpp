#pragma once

#include <map>
#include <string>
#include <vector>

#include "factdual/series.hpp"

namespace factdual {

// Orchestration config for `factdual run`. Experiment ids:
//   identity-suite | series | dist | rho | sqrt-window | exceptional:P | kappa:FN
struct ExperimentConfig {
    u64 limit = 1000000;
    u64 block_size = kDefaultBlockSize;
    unsigned worker_count = 0;            // 0 = FACTDUAL_WORKERS env, else hardware
    std::string checkpoint_spec = "pow10";  // "pow10" or "list:x1,x2,..."
    std::vector<SliceSpec> slices;
    std::vector<std::string> experiments;
    std::string out_dir = ".";

    // identity-suite knobs
    u64 identity_max_n = 10000;
    int identity_k_max = 4;

    // dist knobs
    std::vector<u64> dist_moduli = {3, 4};
    // rho knobs
    u64 rho_inv_h = 1024;
    double rho_alpha_max = 16.0;
    std::vector<Rational> rho_alphas;     // for the psi/rho comparison; default 1.5,2,2.5,3

    StreamOptions stream() const;
    std::vector<u64> checkpoints() const;
};

// Parse / serialize JSON config files.
ExperimentConfig config_from_json_file(const std::string& path);
ExperimentConfig config_from_json_text(const std::string& text);

// Throws std::invalid_argument listing every offending field.
void validate(const ExperimentConfig& cfg);

struct ManifestEntry {
    std::string file;   // relative to out_dir
    std::string op;     // producing operation
    std::string claim;  // claim id the output speaks to
};

struct RunResult {
    std::vector<ManifestEntry> outputs;
    bool ok = true;
};

// Executes each configured experiment, writes CSVs plus manifest.json into out_dir.
// Outputs are deterministic for a fixed config regardless of worker_count.
RunResult run_experiments(const ExperimentConfig& cfg);

struct FitReport {
    std::string experiment;
    std::string model;
    std::map<std::string, double> fitted;
    double residual_norm = 0.0;
    std::vector<std::pair<u64, double>> rows;  // (x, transformed value)
    std::string verdict;  // "pass" or "report-only"
};

// Convergence fits over a series table:
//  (a) m_omega(x) * log x           -> constant       (report-only)
//  (b) M_omega(x) * log^2 x / x     -> ~1             (report-only at desk scale)
//  (c) sliced |m_omega| * sqrt(log x)/(log log x)^2.5 -> bounded (pass if bounded)
//  (d) sliced m(x) -> -1/phi(k)                        (pass within tolerance)
// Least squares on the last half of the checkpoints. Needs >= 3 checkpoints.
std::vector<FitReport> fit_rates(const SeriesTable& table);

// `factdual report`: read a run directory (manifest.json + CSVs), emit report.json.
void write_report(const std::string& in_dir, const std::string& out_path);

// Long-format series CSV (header: x,stat,k,l,value,err_bound).
void write_series_csv(const SeriesTable& table, const std::string& path);

}  // namespace factdual
