#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cbm/engine.hpp"
#include "cbm/optimizer.hpp"

namespace cbm {

struct LoadedConfig {
    ScenarioConfig scenario;
    std::optional<SearchGrid> grid;
    SearchOptions search;
};

/// Parses a JSON scenario document with sections degradation, policy,
/// costs, suppliers, requirements, simulation and (optionally) grid, then
/// validates it. Unknown keys are rejected. Throws ConfigError.
LoadedConfig parse_config(const std::string& text);

LoadedConfig load_config(const std::filesystem::path& path);

}  // namespace cbm
