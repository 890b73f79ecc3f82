#pragma once

#include <dhull/lattice.hpp>
#include <dhull/oracle.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dhull::bench {

// Trial centers are drawn on this fixed rational grid inside the unit
// square, so a seed reproduces every body exactly.
inline constexpr Coord center_denominator = Coord(1) << 20;

// Disks whose bounding-box diameter stays at or below this get their chain
// cross-checked against the column-walking reference during benchmark runs.
inline constexpr long long naive_check_cutoff = 400;

// Timing repetitions switch to median-of-three at this radius.
inline constexpr long long timing_repeat_threshold = 100000;

struct TrialStats {
    long long radius = 0;
    int trial = 0;
    long long vertex_count = 0;
    long long boundary_count = 0;
    int max_iterations_per_edge = 0;
    long long oracle_calls = 0;
    double wall_time_dch = 0.0;
    std::optional<double> wall_time_naive;
};

struct AggregateRow {
    long long radius = 0;
    int trials = 0;
    long long vertex_min = 0;
    long long vertex_max = 0;
    double vertex_avg = 0.0; // rounded to 3 decimals
    double vertex_ratio_min = 0.0; // vertex_count / r^(2/3)
    double vertex_ratio_max = 0.0;
    double vertex_ratio_avg = 0.0;
    long long boundary_min = 0;
    long long boundary_max = 0;
    double boundary_avg = 0.0;
    double boundary_ratio_min = 0.0; // boundary_count / r^(2/3)
    double boundary_ratio_max = 0.0;
    double boundary_ratio_avg = 0.0;
    int max_iterations = 0;
    double time_dch_avg = 0.0;
    std::optional<double> time_naive_avg;
};

// One disk trial: radius r at the given center. Runs the output-sensitive
// hull under a counting decorator, optionally the column-walking reference
// as well (their chains are compared whenever the diameter is at or below
// naive_check_cutoff; a mismatch throws std::runtime_error with full
// reproduction data).
TrialStats run_trial(long long radius, RationalPoint center, int trial_index,
                     bool with_naive);

// The experiment protocol: for each radius, trials_per_radius centers drawn
// uniformly from the unit-square grid by a seeded PRNG. Deterministic for a
// fixed (radii, trials, seed) triple apart from the timing fields.
std::vector<TrialStats> run_trials(const std::vector<long long>& radii,
                                   int trials_per_radius, std::uint64_t seed,
                                   bool with_naive);

// Per-radius summary rows (ascending radius): exact min/max, means rounded
// to 3 decimals, plus the ratios against r^(2/3).
std::vector<AggregateRow> aggregate(const std::vector<TrialStats>& stats);

struct VerifyReport {
    long long trials_run = 0;
    bool all_equal = true;
    std::string detail; // reproduction data for the first mismatch
};

// Equivalence harness: both algorithms on every trial, plus an adversarial
// center set (lattice and half-integer centers) per radius. Radii above
// 10^5 are rejected with std::invalid_argument since the reference walk has
// to finish in reasonable time.
VerifyReport verify_equivalence(const std::vector<long long>& radii,
                                int trials_per_radius, std::uint64_t seed);

// CSV with exactly these columns:
// radius,trial,vertices,boundary,max_iter,oracle_calls,t_dch_s,t_naive_s
std::string to_csv(const std::vector<TrialStats>& stats);

} // namespace dhull::bench
