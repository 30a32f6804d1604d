#pragma once

#include <utility>
#include <vector>

#include "gridnav/planner.hpp"
#include "gridnav/rng.hpp"

namespace gridnav {

// Randomized start/stop sweep over alpha values and weight laws, reporting
// paired percent changes against a baseline algorithm.
struct BenchmarkSpec {
    const BinaryGrid* obstacles = nullptr;
    std::vector<AccessPoint> aps;
    std::vector<WeightKind> weight_kinds;
    std::vector<double> alpha_grid;
    std::vector<Algorithm> algorithms;
    Algorithm baseline = Algorithm::OA;
    int trials = 100;
    std::uint64_t seed = 7;

    void validate() const;
};

struct BenchmarkRow {
    WeightKind weight;
    Algorithm algorithm = Algorithm::OD;
    double alpha = 0.0;
    double distance_increase_pct = 0.0;
    double radio_increase_pct = 0.0;
    double combined_decrease_pct = 0.0;
    double runtime_increase_pct = 0.0;
    int trials_used = 0;
    // raw means, not part of the CSV schema
    double mean_runtime_ms = 0.0;
    double mean_combined = 0.0;
    double mean_expanded = 0.0;
};

// Two distinct, mutually reachable free cells drawn uniformly from the free
// cells of the map; resamples until the pair is connected and fails after a
// bounded number of attempts.
std::pair<Cell, Cell> sample_endpoints(const BinaryGrid& obstacles, SplitMix64& rng);

// 100 * (value - baseline) / baseline; the baseline must be positive.
double percent_change(double value, double baseline);

// Runs the sweep: each trial draws one endpoint pair shared by every
// (weight, algorithm, alpha) combination, then aggregates per-trial percent
// changes of distance, radio weight and combined cost against the baseline
// algorithm (runtime is compared as a percent change of the means). A trial
// is skipped for a row when any configuration of its trial failed or when a
// percent change is undefined (non-positive baseline denominator). Rows are
// sorted by (weight, algorithm, alpha).
std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec);

} // namespace gridnav
