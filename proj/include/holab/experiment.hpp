#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace holab {

// One reproducible experiment: symbol -> boundary sample -> profile/dyadic ->
// verdicts, with a deterministic report bundle on disk.
struct ExperimentConfig {
    std::string id = "lens";  // thm-noncompact | lens | phi-theta | corollary | custom
    std::string symbol_spec;  // custom only
    std::string psi_spec;     // optional override
    std::size_t n_points = 0;  // 0 = per-experiment default
    std::uint64_t seed = 0;    // 0 = deterministic grid
    double h_min = 0.0, h_max = 0.5;  // h_min 0 = per-experiment default
    std::size_t h_points = 40;
    int depth = 10;
    std::vector<double> p_list;  // Luecking / schatten exponents; empty = default
    double theta = 0.0;          // 0 = per-experiment default
    std::string out_dir;
};

struct ExperimentAssertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentResult {
    std::vector<ExperimentAssertion> assertions;
    bool all_pass = true;
    std::string summary;  // the text written to summary.txt
};

// Validates the config (resolution floors, depth limits, spec parses) before
// any computation, runs the pipeline, writes profile.csv / dyadic.csv /
// verdicts.json / summary.txt / config.txt into out_dir.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace holab
