#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cbm/cost.hpp"
#include "cbm/degradation.hpp"
#include "cbm/inventory.hpp"
#include "cbm/maintenance_policy.hpp"
#include "cbm/supply_chain.hpp"

namespace cbm {

struct SimulationOptions {
    // Push inspections back until spares for the expected action arrive.
    bool defer_for_spares = true;
    // Re-enquiry interval when no supplier can serve an emergency; 0 means
    // the fastest local lead time.
    double emergency_retry_interval = 0.0;
    int emergency_retry_cap = 10000;
    long max_inspections_per_cycle = 10'000'000;
    bool trace = false;
    int workers = 1;
    CostRateEstimator estimator = CostRateEstimator::RenewalReward;
};

struct ScenarioConfig {
    DegradationParams degradation;
    PolicyParams policy;
    CostParams costs;
    SupplyChain suppliers;
    SpareRequirements requirements;
    int replications = 1;
    std::uint64_t seed = 0;
    SimulationOptions options;

    /// Validates every sub-configuration; throws ConfigError or DomainError.
    void validate() const;

    double retry_interval() const;
};

enum class EventKind {
    Delivery,
    Failure,           // latent threshold crossing
    Inspection,
    FailureDetected,
    Imperfect,
    Perfect,
    Corrective,
    PreventiveShortage,
    LocalOrder,
    MainOrder,
    EnquiryFailed,
};

const char* to_string(EventKind kind);

struct TraceEvent {
    double time = 0.0;
    EventKind kind = EventKind::Inspection;
    int on_hand = 0;       // on-hand stock after the event
    double level = 0.0;    // deterioration level after the event
    int quantity = 0;      // parts ordered, delivered or consumed
    double amount = 0.0;   // imperfect action cost
    bool emergency = false;
};

struct ReplicationResult {
    std::uint64_t stream_id = 0;
    double cycle_length = 0.0;
    double total_cost = 0.0;
    double availability = 1.0;
    CostLedger ledger;
    long consumed = 0;
    long preventive_shortages = 0;
    long emergency_retries = 0;
    double last_renewal_time = 0.0;  // start of the life that ended in failure
    double failure_time = 0.0;       // latent crossing of L (grid resolution)
    double detection_time = 0.0;
    int on_hand_end = 0;
    int pipeline_end = 0;
    std::vector<TraceEvent> trace;
};

/// 1 - d2 / cycle_length.
double availability_of(const ReplicationResult& result);

/// Simulates one life cycle, from a new system with S spares on hand to the
/// completion of the first corrective action.
ReplicationResult run_cycle(const ScenarioConfig& config, std::uint64_t stream_id);

struct BatchStats {
    int n = 0;
    double cost_rate = 0.0;
    double cost_rate_se = 0.0;
    double availability = 0.0;  // mean per-cycle availability
    double availability_se = 0.0;
    double availability_q05 = 0.0;  // 5% quantile of per-cycle availability
    double mean_cycle_length = 0.0;
    double mean_total_cost = 0.0;
    CostBreakdown cost_rate_terms{};  // each term summed over cycles, divided by total length
    std::vector<ReplicationResult> replications;
};

/// Runs replications on streams 0..n-1 over options.workers threads. The
/// result does not depend on the worker count.
BatchStats run_replications(const ScenarioConfig& config, bool keep_replications = true);

double cost_rate(std::span<const ReplicationResult> results,
                 CostRateEstimator estimator = CostRateEstimator::RenewalReward);

}  // namespace cbm
