#include "cbm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace cbm {

namespace {

// Streams reserved for sampling search points; disjoint from replication ids.
constexpr std::uint64_t kSearchStream = 0xFFFF'FFFF'0000'0001ULL;

bool better(const PointRecord& a, const PointRecord& b) {
    return std::tie(a.cost_rate, a.params.S, a.params.K, a.params.M, a.params.T_reorder, a.params.Q) <
           std::tie(b.cost_rate, b.params.S, b.params.K, b.params.M, b.params.T_reorder, b.params.Q);
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index, const SearchOptions& options) {
    if (options.common_random_numbers) return seed;
    return seed + 0x9E37'79B9'7F4A'7C15ULL * (static_cast<std::uint64_t>(index) + 1);
}

void evaluate(const std::vector<PolicyParams>& points, const ScenarioConfig& config, const SearchOptions& options,
              std::vector<PointRecord>& table, std::vector<SkippedPoint>& skipped) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        ScenarioConfig point = config;
        point.policy = points[i];
        point.policy.A_star = config.policy.A_star;
        try {
            point.policy.validate(config.degradation.L);
        } catch (const ConfigError& e) {
            skipped.push_back({point.policy, e.what()});
            continue;
        }
        point.seed = point_seed(config.seed, i, options);
        const BatchStats stats = run_replications(point, false);
        PointRecord record;
        record.params = point.policy;
        record.cost_rate = stats.cost_rate;
        record.cost_rate_se = stats.cost_rate_se;
        record.availability = stats.availability;
        record.availability_se = stats.availability_se;
        record.availability_q05 = stats.availability_q05;
        const double measure =
            options.feasibility == FeasibilityMode::MeanAvailability ? stats.availability : stats.availability_q05;
        record.feasible = measure >= point.policy.A_star;
        table.push_back(record);
    }
}

}  // namespace

std::size_t SearchGrid::size() const {
    return m_values.size() * k_values.size() * t_values.size() * s_values.size() * q_values.size();
}

void SearchGrid::validate() const {
    if (m_values.empty()) throw ConfigError("grid.M must list at least one value");
    if (k_values.empty()) throw ConfigError("grid.K must list at least one value");
    if (t_values.empty()) throw ConfigError("grid.T must list at least one value");
    if (s_values.empty()) throw ConfigError("grid.S must list at least one value");
    if (q_values.empty()) throw ConfigError("grid.Q must list at least one value");
}

void SearchBounds::validate() const {
    if (!(m.first <= m.second)) throw ConfigError("search bounds for M are inverted");
    if (!(k.first <= k.second)) throw ConfigError("search bounds for K are inverted");
    if (!(t.first <= t.second)) throw ConfigError("search bounds for T are inverted");
    if (!(s.first <= s.second)) throw ConfigError("search bounds for S are inverted");
    if (!(q.first <= q.second)) throw ConfigError("search bounds for Q are inverted");
}

OptimizationResult select_best(std::vector<PointRecord> table, std::vector<SkippedPoint> skipped) {
    const PointRecord* best = nullptr;
    for (const auto& record : table) {
        if (record.feasible && (best == nullptr || better(record, *best))) best = &record;
    }
    OptimizationResult result;
    if (best != nullptr) {
        result.best = best->params;
        result.best_cost_rate = best->cost_rate;
        result.best_availability = best->availability;
    }
    const bool found = best != nullptr;
    result.table = std::move(table);
    result.skipped = std::move(skipped);
    if (!found) {
        throw InfeasibleError("no evaluated point satisfies the availability floor", std::move(result));
    }
    return result;
}

OptimizationResult grid_search(const SearchGrid& grid, const ScenarioConfig& config, const SearchOptions& options) {
    grid.validate();
    std::vector<PolicyParams> points;
    points.reserve(grid.size());
    for (double m : grid.m_values)
        for (int k : grid.k_values)
            for (double t : grid.t_values)
                for (int s : grid.s_values)
                    for (double q : grid.q_values) points.push_back({m, k, t, s, q, config.policy.A_star});

    std::vector<PointRecord> table;
    std::vector<SkippedPoint> skipped;
    evaluate(points, config, options, table, skipped);
    return select_best(std::move(table), std::move(skipped));
}

OptimizationResult random_search(const SearchBounds& bounds, int budget, const ScenarioConfig& config,
                                 const SearchOptions& options) {
    if (budget < 1) throw ConfigError("random search budget must be at least 1");
    bounds.validate();
    RngStream rng(config.seed, kSearchStream);
    auto real_in = [&](std::pair<double, double> range) {
        return range.first + rng.uniform() * (range.second - range.first);
    };
    auto int_in = [&](std::pair<int, int> range) {
        const int span = range.second - range.first + 1;
        return range.first + std::min(span - 1, static_cast<int>(rng.uniform() * span));
    };
    std::vector<PolicyParams> points;
    points.reserve(static_cast<std::size_t>(budget));
    for (int i = 0; i < budget; ++i) {
        PolicyParams p;
        p.M = real_in(bounds.m);
        p.K = int_in(bounds.k);
        p.T_reorder = real_in(bounds.t);
        p.S = int_in(bounds.s);
        p.Q = real_in(bounds.q);
        p.A_star = config.policy.A_star;
        points.push_back(p);
    }
    std::vector<PointRecord> table;
    std::vector<SkippedPoint> skipped;
    evaluate(points, config, options, table, skipped);
    return select_best(std::move(table), std::move(skipped));
}

}  // namespace cbm
