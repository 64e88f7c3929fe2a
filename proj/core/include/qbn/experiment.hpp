#pragma once

#include "qbn/learning.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qbn {

// Full synthetic-data protocol: sample train/test data from a ground
// truth, learn each algorithm from R shared random initializations, and
// write per-run curves plus a summary table.
struct ExperimentConfig {
    std::string ground_truth_path;
    std::string constraints_path;
    std::string structure_path;  // optional; empty = ground truth's structure
    std::vector<std::string> hidden;
    std::optional<std::string> target;
    int train_count = 1000;
    int test_count = 10000;
    int replications = 10;
    std::vector<Algorithm> algorithms{Algorithm::em, Algorithm::em_qc};
    int iterations = 100;
    double penalty_weight = 2.0;
    double step_size = 0.05;
    double min_prob = 1e-6;
    int record_every = 1;
    bool hybrid_scale_by_weight = true;
    uint64_t master_seed = 1;
    std::string output_dir;
};

ExperimentConfig load_experiment_config(const std::string& path);

struct ExperimentRun {
    std::string algorithm;  // "baseline" for the ground-truth rows
    int replication = 0;    // 0 for the baseline
    double train_nll_per_case = 0.0;
    double test_nll_per_case = 0.0;
    double violation = 0.0;
    std::optional<double> quadratic_loss;
    std::string curve_file;  // empty for the baseline
};

struct ExperimentResult {
    std::vector<ExperimentRun> runs;  // baseline first, then per algorithm x replication
    std::string summary_file;
    std::string train_file;
    std::string test_file;
};

// Seeds are derived from master_seed: the train sample uses master_seed,
// the test sample master_seed + replications + 1, and replication r
// (1-based) initializes its CPTs from master_seed + r, shared across
// algorithms so initializations are paired.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

} // namespace qbn
