#include "cbm/report.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cbm {

std::string format_double(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

void write_replications_csv(std::ostream& out, const BatchStats& stats) {
    out << kReplicationsHeader << '\n';
    for (const auto& r : stats.replications) {
        const CostLedger& l = r.ledger;
        out << r.stream_id << ',' << format_double(r.cycle_length) << ',' << format_double(r.total_cost) << ','
            << format_double(r.availability) << ',' << l.n_ins << ',' << l.n_ip << ',' << l.n_p << ',' << l.n_o
            << ',' << l.n_oe << ',' << format_double(l.d1) << ',' << format_double(l.d2) << ',' << l.purchased
            << '\n';
    }
}

void write_grid_csv(std::ostream& out, const OptimizationResult& result) {
    out << kGridHeader << '\n';
    for (const auto& p : result.table) {
        out << format_double(p.params.M) << ',' << p.params.K << ',' << format_double(p.params.T_reorder) << ','
            << p.params.S << ',' << format_double(p.params.Q) << ',' << format_double(p.cost_rate) << ','
            << format_double(p.cost_rate_se) << ',' << format_double(p.availability) << ','
            << format_double(p.availability_se) << ',' << (p.feasible ? 1 : 0) << '\n';
    }
}

namespace {

void policy_block(std::ostream& out, const PolicyParams& p) {
    out << "policy: M=" << format_double(p.M) << " K=" << p.K << " T=" << format_double(p.T_reorder)
        << " S=" << p.S << " Q=" << format_double(p.Q) << " A*=" << format_double(p.A_star) << '\n';
}

void stats_block(std::ostream& out, const BatchStats& stats) {
    out << "replications: " << stats.n << '\n'
        << "cost rate: " << format_double(stats.cost_rate) << " +/- " << format_double(stats.cost_rate_se) << '\n'
        << "availability: " << format_double(stats.availability) << " +/- " << format_double(stats.availability_se)
        << '\n'
        << "mean cycle length: " << format_double(stats.mean_cycle_length) << '\n'
        << "cost rate breakdown:\n";
    for (std::size_t i = 0; i < kCostTermCount; ++i) {
        out << "  " << kCostTermNames[i] << ": " << format_double(stats.cost_rate_terms[i]) << '\n';
    }
}

}  // namespace

std::string simulation_summary(const ScenarioConfig& config, const BatchStats& stats) {
    std::ostringstream out;
    policy_block(out, config.policy);
    stats_block(out, stats);
    return out.str();
}

std::string optimization_summary(const ScenarioConfig& config, const OptimizationResult& result,
                                 const BatchStats* best_stats) {
    std::ostringstream out;
    out << "evaluated points: " << result.table.size() << '\n';
    out << "skipped points: " << result.skipped.size() << '\n';
    for (const auto& s : result.skipped) {
        out << "  skipped M=" << format_double(s.params.M) << " K=" << s.params.K
            << " T=" << format_double(s.params.T_reorder) << " S=" << s.params.S << " Q=" << format_double(s.params.Q)
            << ": " << s.reason << '\n';
    }
    out << "best ";
    PolicyParams best = result.best;
    best.A_star = config.policy.A_star;
    policy_block(out, best);
    if (best_stats != nullptr) stats_block(out, *best_stats);
    return out.str();
}

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace cbm
