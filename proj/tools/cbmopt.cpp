// Command line front end: simulate a policy, optimize over a grid, or
// validate a scenario file.
//
// Exit codes: 0 success, 1 usage or unexpected error, 2 configuration error,
// 3 no feasible grid point, 4 output error, 5 simulation error.

#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cbm/config.hpp"
#include "cbm/report.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kConfigError = 2,
    kInfeasible = 3,
    kIoError = 4,
    kSimulationError = 5,
};

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> replications;
    std::optional<int> workers;
};

cbm::LoadedConfig load(const std::string& path, const Overrides& o) {
    cbm::LoadedConfig cfg = cbm::load_config(path);
    if (o.seed) cfg.scenario.seed = *o.seed;
    if (o.replications) cfg.scenario.replications = *o.replications;
    if (o.workers) cfg.scenario.options.workers = *o.workers;
    cfg.scenario.validate();
    return cfg;
}

std::string replications_csv(const cbm::BatchStats& stats) {
    std::ostringstream out;
    cbm::write_replications_csv(out, stats);
    return out.str();
}

int simulate(const std::string& config_path, const std::string& out_dir, const Overrides& o) {
    const auto cfg = load(config_path, o);
    const auto stats = cbm::run_replications(cfg.scenario);
    const std::string summary = cbm::simulation_summary(cfg.scenario, stats);
    std::cout << summary;
    cbm::write_file(out_dir, "replications.csv", replications_csv(stats));
    cbm::write_file(out_dir, "summary.txt", summary);
    return kOk;
}

int optimize(const std::string& config_path, const std::string& out_dir, const Overrides& o) {
    const auto cfg = load(config_path, o);
    if (!cfg.grid) throw cbm::ConfigError("optimize requires a 'grid' section");
    try {
        const auto result = cbm::grid_search(*cfg.grid, cfg.scenario, cfg.search);
        cbm::ScenarioConfig best = cfg.scenario;
        best.policy = result.best;
        best.policy.A_star = cfg.scenario.policy.A_star;
        const auto stats = cbm::run_replications(best);
        const std::string summary = cbm::optimization_summary(cfg.scenario, result, &stats);
        std::cout << summary;
        std::ostringstream grid;
        cbm::write_grid_csv(grid, result);
        cbm::write_file(out_dir, "grid.csv", grid.str());
        cbm::write_file(out_dir, "replications.csv", replications_csv(stats));
        cbm::write_file(out_dir, "summary.txt", summary);
        return kOk;
    } catch (const cbm::InfeasibleError& e) {
        std::ostringstream grid;
        cbm::write_grid_csv(grid, e.result);
        cbm::write_file(out_dir, "grid.csv", grid.str());
        const std::string summary = std::string("infeasible: ") + e.what() + "\n";
        cbm::write_file(out_dir, "summary.txt", summary);
        std::cerr << summary;
        return kInfeasible;
    }
}

int validate(const std::string& config_path) {
    const auto cfg = cbm::load_config(config_path);
    std::cout << "ok: " << config_path;
    if (cfg.grid) std::cout << " (grid of " << cfg.grid->size() << " points)";
    std::cout << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint condition-based maintenance and spare-part policy simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    Overrides overrides;
    std::uint64_t seed = 0;
    int replications = 0;
    int workers = 0;

    auto* sim = app.add_subcommand("simulate", "Simulate the configured policy");
    sim->add_option("--config", config_path, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out_dir, "Output directory")->required();
    auto* sim_seed = sim->add_option("--seed", seed, "Override simulation.seed");
    auto* sim_reps = sim->add_option("--replications", replications, "Override simulation.replications");
    auto* sim_workers = sim->add_option("--workers", workers, "Worker threads");

    auto* opt = app.add_subcommand("optimize", "Grid search over (M, K, T, S, Q)");
    opt->add_option("--config", config_path, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    opt->add_option("--out", out_dir, "Output directory")->required();
    auto* opt_seed = opt->add_option("--seed", seed, "Override simulation.seed");
    auto* opt_workers = opt->add_option("--workers", workers, "Worker threads");

    auto* val = app.add_subcommand("validate", "Check a scenario file");
    val->add_option("--config", config_path, "Scenario file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    if (sim_seed->count() || opt_seed->count()) overrides.seed = seed;
    if (sim_reps->count()) overrides.replications = replications;
    if (sim_workers->count() || opt_workers->count()) overrides.workers = workers;

    try {
        if (sim->parsed()) return simulate(config_path, out_dir, overrides);
        if (opt->parsed()) return optimize(config_path, out_dir, overrides);
        return validate(config_path);
    } catch (const cbm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const cbm::IoError& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kIoError;
    } catch (const cbm::SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return kSimulationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
