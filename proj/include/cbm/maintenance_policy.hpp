#pragma once

#include "cbm/degradation.hpp"
#include "cbm/inventory.hpp"

namespace cbm {

/// Decision vector (M, K, T, S, Q) plus the availability floor.
struct PolicyParams {
    double M = 0.0;          // preventive maintenance threshold
    int K = 0;               // successive imperfect actions allowed before a perfect one
    double T_reorder = 0.0;  // reorder level of deterioration
    int S = 1;               // order-up-to stock level
    double Q = 0.05;         // failure probability budget between inspections
    double A_star = 0.0;     // availability floor

    /// Throws ConfigError when an invariant fails; L is the failure threshold.
    void validate(double L) const;

    friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

enum class ActionKind { NoAction, Imperfect, Perfect, Corrective };

const char* to_string(ActionKind kind);

ActionKind classify_action(double x, int k, const PolicyParams& policy, double L);

/// Inspection delay dt such that P(X(t + dt) >= L | X(t) = x) = Q for a
/// process at speed v, floored at the latent grid step.
double rul_delay(double x, double v, double Q, double L, const DegradationParams& params);

/// Spares the action expected at the next inspection would need.
int expected_requirement(int k, const PolicyParams& policy, const SpareRequirements& requirements);

struct InspectionSchedule {
    double t_next = 0.0;
    double t_candidate = 0.0;  // reliability-driven time before any spare deferral
    int requirement = 0;       // spares the expected action needs
    bool deferred = false;     // t_next was pushed back to a delivery
    bool shortfall = false;    // no pending delivery can cover the requirement
};

/// Two-step inspection rule: the reliability-driven candidate, then deferral
/// to the first time projected stock covers the expected action.
InspectionSchedule schedule_next_inspection(const SystemState& state, const InventoryState& inv,
                                            const PolicyParams& policy, const DegradationParams& params,
                                            const SpareRequirements& requirements, bool defer_for_spares = true);

}  // namespace cbm
