#include "cbm/maintenance_policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cbm {

void PolicyParams::validate(double L) const {
    if (!(M > 0.0)) throw ConfigError("policy.M must be positive");
    if (!(M < L)) throw ConfigError("policy.M must be below failure threshold L");
    if (K < 0) throw ConfigError("policy.K must be non-negative");
    if (!(T_reorder > 0.0)) throw ConfigError("policy.T must be positive");
    if (S < 1) throw ConfigError("policy.S must be at least 1");
    if (!(Q > 0.0 && Q < 1.0)) throw ConfigError("policy.Q must lie strictly between 0 and 1");
    if (!(A_star >= 0.0 && A_star <= 1.0)) throw ConfigError("policy.A_star must lie in [0, 1]");
}

const char* to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::NoAction: return "none";
        case ActionKind::Imperfect: return "imperfect";
        case ActionKind::Perfect: return "perfect";
        case ActionKind::Corrective: return "corrective";
    }
    return "unknown";
}

ActionKind classify_action(double x, int k, const PolicyParams& policy, double L) {
    if (x >= L) return ActionKind::Corrective;
    if (x >= policy.M) return k < policy.K ? ActionKind::Imperfect : ActionKind::Perfect;
    return ActionKind::NoAction;
}

double rul_delay(double x, double v, double Q, double L, const DegradationParams& params) {
    if (!(x < L)) throw DomainError("rul_delay requires a level below the failure threshold");
    if (!(v > 0.0)) throw DomainError("rul_delay requires a positive speed");
    if (!(Q >= 0.0 && Q < 1.0)) throw DomainError("rul_delay requires Q in [0, 1)");
    const double gap = L - x;
    const double shape_per_time = v * params.beta;
    auto failure_probability = [&](double dt) {
        if (dt <= 0.0) return 0.0;
        return 1.0 - gamma_cdf(gap, GammaSpec{shape_per_time * dt, params.beta});
    };
    const double dt = solve_monotone_increasing(failure_probability, Q, 0.0, 2.0 * gap / v, SolverOptions{});
    return std::max(dt, params.path_step);
}

int expected_requirement(int k, const PolicyParams& policy, const SpareRequirements& requirements) {
    if (k < policy.K) return requirements.ipms_prob > 0.0 ? 1 : 0;
    return requirements.pms;
}

InspectionSchedule schedule_next_inspection(const SystemState& state, const InventoryState& inv,
                                            const PolicyParams& policy, const DegradationParams& params,
                                            const SpareRequirements& requirements, bool defer_for_spares) {
    InspectionSchedule out;
    out.t_candidate = state.t + rul_delay(state.x, state.v, policy.Q, params.L, params);
    out.t_next = out.t_candidate;
    out.requirement = expected_requirement(state.k, policy, requirements);
    const auto covered_at = coverage_time(inv, out.requirement, state.t);
    if (!covered_at) {
        out.shortfall = true;
        return out;
    }
    if (defer_for_spares && *covered_at > out.t_candidate) {
        out.t_next = *covered_at;
        out.deferred = true;
    }
    return out;
}

}  // namespace cbm
