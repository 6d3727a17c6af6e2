#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cbm/engine.hpp"

namespace cbm {

struct SearchGrid {
    std::vector<double> m_values;
    std::vector<int> k_values;
    std::vector<double> t_values;
    std::vector<int> s_values;
    std::vector<double> q_values;

    std::size_t size() const;
    void validate() const;
};

enum class FeasibilityMode {
    MeanAvailability,  // batch mean availability >= A*
    CycleQuantile,     // 5% quantile of per-cycle availability >= A*
};

struct SearchOptions {
    bool common_random_numbers = true;
    FeasibilityMode feasibility = FeasibilityMode::MeanAvailability;
};

struct PointRecord {
    PolicyParams params;
    double cost_rate = 0.0;
    double cost_rate_se = 0.0;
    double availability = 0.0;
    double availability_se = 0.0;
    double availability_q05 = 0.0;
    bool feasible = false;
};

struct SkippedPoint {
    PolicyParams params;
    std::string reason;
};

struct OptimizationResult {
    PolicyParams best;
    double best_cost_rate = 0.0;
    double best_availability = 0.0;
    std::vector<PointRecord> table;
    std::vector<SkippedPoint> skipped;
};

/// No evaluated point met the availability floor; carries the full table.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, OptimizationResult evaluated)
        : std::runtime_error(what), result(std::move(evaluated)) {}

    OptimizationResult result;
};

/// Evaluates every valid grid point with run_replications and returns the
/// cheapest feasible one. Ties go to smaller S, then smaller K, then the
/// lexicographically smaller (M, T, Q).
OptimizationResult grid_search(const SearchGrid& grid, const ScenarioConfig& config, const SearchOptions& options = {});

struct SearchBounds {
    std::pair<double, double> m;
    std::pair<int, int> k;
    std::pair<double, double> t;
    std::pair<int, int> s;
    std::pair<double, double> q;

    void validate() const;
};

/// Samples `budget` points uniformly within the bounds (integers uniformly
/// over their inclusive range) and evaluates them like grid_search.
OptimizationResult random_search(const SearchBounds& bounds, int budget, const ScenarioConfig& config,
                                 const SearchOptions& options = {});

/// Same selection rule as the searches, applied to an evaluated table.
OptimizationResult select_best(std::vector<PointRecord> table, std::vector<SkippedPoint> skipped);

}  // namespace cbm
