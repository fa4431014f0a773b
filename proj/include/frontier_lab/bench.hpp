#pragma once

#include <string>
#include <vector>

#include "frontier_lab/planner.hpp"

namespace frontier_lab {

// Mean over maps of per-map episode means.
double compute_mu(const std::vector<std::vector<long>>& steps);
// Mean of squared per-map means minus mu^2: the variance of per-map means.
double compute_sigma(const std::vector<std::vector<long>>& steps);
// Improvement of a variant over the baseline, in percent.
double compute_s(double mu_baseline, double mu_variant);

struct BenchVariant {
    std::string name;
    PlannerConfig planner;
};

struct BenchmarkConfig {
    std::vector<int> sizes = {50};
    int maps_per_size = 10;   // N_M
    int episodes_per_map = 5; // N_E
    double density = 0.15;
    uint64_t suite_seed = 1;
    long step_budget = 0; // 0 = planner default
    std::vector<BenchVariant> variants;

    // suite -> map -> episode derivation, documented in the summary manifest
    uint64_t map_seed(int size_index, int map_index) const;
    uint64_t episode_seed(int size_index, int map_index, int episode_index) const;
};

struct EpisodeRow {
    std::string variant;
    int size = 0;
    uint64_t map_seed = 0;
    uint64_t episode_seed = 0;
    long steps = 0;
    bool completed = false;
    friend bool operator==(const EpisodeRow&, const EpisodeRow&) = default;
};

struct VariantStats {
    std::string variant;
    int size = 0;
    double mu = 0.0;
    double sigma = 0.0;
    double s_vs_baseline = 0.0; // against variants[0] on the same maps/seeds
    friend bool operator==(const VariantStats&, const VariantStats&) = default;
};

struct BenchmarkResult {
    std::vector<EpisodeRow> rows;    // (variant, size, map, episode) order
    std::vector<VariantStats> stats; // (variant, size) order
    friend bool operator==(const BenchmarkResult&, const BenchmarkResult&) = default;
};

// Runs every variant over identical maps and episode seeds (paired
// comparison). Episodes run in parallel; rows and stats are deterministic
// folds in index order regardless of scheduling.
BenchmarkResult run_benchmark(const BenchmarkConfig& cfg);

void write_results_csv(const std::string& path, const BenchmarkResult& result);
void write_summary_json(const std::string& path, const BenchmarkConfig& cfg,
                        const BenchmarkResult& result);
// Reassembles a BenchmarkResult from the two files.
BenchmarkResult read_results(const std::string& csv_path, const std::string& json_path);

} // namespace frontier_lab
