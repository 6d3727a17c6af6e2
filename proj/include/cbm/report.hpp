#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cbm/engine.hpp"
#include "cbm/optimizer.hpp"

namespace cbm {

/// Shortest decimal text that parses back to the same double; never
/// depends on the global locale.
std::string format_double(double value);

inline constexpr const char* kReplicationsHeader =
    "stream_id,cycle_length,total_cost,availability,n_ins,n_ip,n_p,n_o,n_oe,d1,d2,purchased";
inline constexpr const char* kGridHeader =
    "M,K,T,S,Q,cost_rate,cost_rate_se,availability,availability_se,feasible";

void write_replications_csv(std::ostream& out, const BatchStats& stats);
void write_grid_csv(std::ostream& out, const OptimizationResult& result);

std::string simulation_summary(const ScenarioConfig& config, const BatchStats& stats);
std::string optimization_summary(const ScenarioConfig& config, const OptimizationResult& result,
                                 const BatchStats* best_stats);

/// Writes text to dir/name, creating dir when needed; throws IoError.
void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text);

}  // namespace cbm
