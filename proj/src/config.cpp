#include "cbm/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cbm {

namespace {

using nlohmann::json;

// Reads typed keys out of one section and remembers which ones were used so
// leftovers can be reported as unknown.
class Section {
public:
    Section(const json& root, std::string name, bool required = true) : name_(std::move(name)) {
        if (!root.contains(name_)) {
            if (required) throw ConfigError("missing section '" + name_ + "'");
            return;
        }
        node_ = &root.at(name_);
        if (!node_->is_object()) throw ConfigError("section '" + name_ + "' must be an object");
    }

    bool present() const { return node_ != nullptr; }
    bool has(const std::string& key) const { return node_ != nullptr && node_->contains(key); }

    double real(const std::string& key) { return get(key, "a number", &json::is_number).get<double>(); }

    double real_or(const std::string& key, double fallback) { return has(key) ? real(key) : fallback; }

    long long integer(const std::string& key) {
        const json& v = get(key, "an integer", &json::is_number_integer);
        return v.get<long long>();
    }

    long long integer_or(const std::string& key, long long fallback) { return has(key) ? integer(key) : fallback; }

    std::uint64_t unsigned_integer(const std::string& key) {
        const json& v = get(key, "a non-negative integer", &json::is_number_integer);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        const auto signed_value = v.get<long long>();
        if (signed_value < 0) throw ConfigError(path(key) + " must be a non-negative integer");
        return static_cast<std::uint64_t>(signed_value);
    }

    bool boolean_or(const std::string& key, bool fallback) {
        return has(key) ? get(key, "a boolean", &json::is_boolean).get<bool>() : fallback;
    }

    std::string string_or(const std::string& key, const std::string& fallback) {
        return has(key) ? get(key, "a string", &json::is_string).get<std::string>() : fallback;
    }

    std::vector<double> real_list(const std::string& key) {
        std::vector<double> out;
        for (const auto& item : list(key)) {
            if (!item.is_number()) throw ConfigError(path(key) + " must list numbers");
            out.push_back(item.get<double>());
        }
        return out;
    }

    std::vector<int> int_list(const std::string& key) {
        std::vector<int> out;
        for (const auto& item : list(key)) {
            if (!item.is_number_integer()) throw ConfigError(path(key) + " must list integers");
            out.push_back(item.get<int>());
        }
        return out;
    }

    void reject_unknown() const {
        if (node_ == nullptr) return;
        for (const auto& [key, value] : node_->items()) {
            if (!used_.contains(key)) throw ConfigError("unknown key '" + path(key) + "'");
        }
    }

private:
    std::string path(const std::string& key) const { return name_ + "." + key; }

    const json& get(const std::string& key, const char* type_name, bool (json::*check)() const noexcept) {
        if (!has(key)) throw ConfigError("missing key '" + path(key) + "'");
        used_.insert(key);
        const json& value = node_->at(key);
        if (!(value.*check)()) throw ConfigError("key '" + path(key) + "' must be " + type_name);
        return value;
    }

    const json& list(const std::string& key) {
        const json& value = get(key, "an array", &json::is_array);
        if (value.empty()) throw ConfigError("key '" + path(key) + "' must not be empty");
        return value;
    }

    std::string name_;
    const json* node_ = nullptr;
    std::set<std::string> used_;
};

int as_int(long long value, const std::string& key) {
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
        throw ConfigError("key '" + key + "' is out of range");
    }
    return static_cast<int>(value);
}

}  // namespace

LoadedConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    static const std::set<std::string> known{"degradation", "policy",     "costs", "suppliers",
                                             "requirements", "simulation", "grid"};
    for (const auto& [key, value] : root.items()) {
        if (!known.contains(key)) throw ConfigError("unknown section '" + key + "'");
    }

    LoadedConfig out;
    ScenarioConfig& sc = out.scenario;

    Section deg(root, "degradation");
    sc.degradation.alpha0 = deg.real("alpha0");
    sc.degradation.beta = deg.real("beta");
    sc.degradation.L = deg.real("L");
    sc.degradation.gamma_rate = deg.real("gamma_rate");
    sc.degradation.path_step = deg.real_or("path_step", 0.0);
    deg.reject_unknown();
    try {
        sc.degradation.finalize();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }

    Section grid(root, "grid", false);
    if (grid.present()) {
        SearchGrid g;
        g.m_values = grid.real_list("M");
        g.k_values = grid.int_list("K");
        g.t_values = grid.real_list("T");
        g.s_values = grid.int_list("S");
        g.q_values = grid.real_list("Q");
        grid.reject_unknown();
        out.grid = g;
    }

    // With a grid the decision keys are optional and default to the grid's first values.
    Section policy(root, "policy");
    const bool optional_decisions = out.grid.has_value();
    auto decision_real = [&](const std::string& key, const std::vector<double>* axis) {
        if (optional_decisions && !policy.has(key)) return axis->front();
        return policy.real(key);
    };
    auto decision_int = [&](const std::string& key, const std::vector<int>* axis) {
        if (optional_decisions && !policy.has(key)) return axis->front();
        return as_int(policy.integer(key), "policy." + key);
    };
    const SearchGrid* g = out.grid ? &*out.grid : nullptr;
    sc.policy.M = decision_real("M", g ? &g->m_values : nullptr);
    sc.policy.K = decision_int("K", g ? &g->k_values : nullptr);
    sc.policy.T_reorder = decision_real("T", g ? &g->t_values : nullptr);
    sc.policy.S = decision_int("S", g ? &g->s_values : nullptr);
    sc.policy.Q = decision_real("Q", g ? &g->q_values : nullptr);
    sc.policy.A_star = policy.real("A_star");
    policy.reject_unknown();

    Section costs(root, "costs");
    CostParams& c = sc.costs;
    c.c_ins = costs.real("c_ins");
    c.c_p0 = costs.real("c_p0");
    c.c_c = costs.real("c_c");
    c.c_d1 = costs.real("c_d1");
    c.c_d2 = costs.real("c_d2");
    c.c_h = costs.real("c_h");
    c.c_o = costs.real("c_o");
    c.c_oe = costs.real("c_oe");
    c.c_pur = costs.real("c_pur");
    c.eta = costs.real("eta");
    costs.reject_unknown();

    Section sup(root, "suppliers");
    sc.suppliers = {
        {1, sup.real("LT_s1"), sup.real("P_s1"), sup.real("C_s1"), SupplierKind::Local},
        {2, sup.real("LT_s2"), sup.real("P_s2"), sup.real("C_s2"), SupplierKind::Local},
        {3, sup.real("LT_se"), sup.real("P_se"), sup.real("C_se"), SupplierKind::Main},
    };
    sup.reject_unknown();

    Section req(root, "requirements", false);
    sc.requirements.cms = as_int(req.integer_or("CMS", 1), "requirements.CMS");
    sc.requirements.pms = as_int(req.integer_or("PMS", 1), "requirements.PMS");
    sc.requirements.ipms_prob = req.real_or("ipms_prob", 0.5);
    req.reject_unknown();

    Section sim(root, "simulation");
    sc.replications = as_int(sim.integer("replications"), "simulation.replications");
    sc.seed = sim.unsigned_integer("seed");
    SimulationOptions& opt = sc.options;
    opt.workers = as_int(sim.integer_or("workers", 1), "simulation.workers");
    opt.defer_for_spares = sim.boolean_or("defer_for_spares", true);
    opt.emergency_retry_interval = sim.real_or("emergency_retry_interval", 0.0);
    opt.emergency_retry_cap = as_int(sim.integer_or("emergency_retry_cap", 10000), "simulation.emergency_retry_cap");
    const std::string estimator = sim.string_or("cost_rate_estimator", "renewal_reward");
    if (estimator == "renewal_reward") {
        opt.estimator = CostRateEstimator::RenewalReward;
    } else if (estimator == "per_cycle_mean") {
        opt.estimator = CostRateEstimator::PerCycleMean;
    } else {
        throw ConfigError("simulation.cost_rate_estimator must be 'renewal_reward' or 'per_cycle_mean'");
    }
    const std::string feasibility = sim.string_or("feasibility", "mean");
    if (feasibility == "mean") {
        out.search.feasibility = FeasibilityMode::MeanAvailability;
    } else if (feasibility == "cycle_quantile") {
        out.search.feasibility = FeasibilityMode::CycleQuantile;
    } else {
        throw ConfigError("simulation.feasibility must be 'mean' or 'cycle_quantile'");
    }
    out.search.common_random_numbers = sim.boolean_or("common_random_numbers", true);
    sim.reject_unknown();

    try {
        sc.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return out;
}

LoadedConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace cbm
