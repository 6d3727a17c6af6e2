#pragma once

#include <array>
#include <span>
#include <string_view>

namespace cbm {

struct CostParams {
    double c_ins = 0.0;   // per inspection
    double c_p0 = 0.0;    // perfect preventive action
    double c_c = 0.0;     // corrective action
    double c_d1 = 0.0;    // malfunction cost rate
    double c_d2 = 0.0;    // downtime cost rate
    double c_h = 0.0;     // holding cost per part per unit time
    double c_o = 0.0;     // ordinary (local) order
    double c_oe = 0.0;    // emergency (main supplier) order
    double c_pur = 0.0;   // purchase price per part
    double eta = 0.0;     // imperfect cost exponent

    /// Throws ConfigError on a non-positive cost or a broken cost ordering.
    void validate() const;

    CostParams scaled(double lambda) const;
};

/// Event counters and accumulated durations for one life cycle.
struct CostLedger {
    long n_ins = 0;
    long n_ip = 0;
    long n_p = 0;
    long n_c = 0;
    long n_o = 0;
    long n_oe = 0;
    double imperfect_cost_sum = 0.0;
    double d1 = 0.0;  // malfunction duration
    double d2 = 0.0;  // downtime duration
    double holding_integral = 0.0;
    long purchased = 0;

    friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

inline constexpr std::size_t kCostTermCount = 10;

/// Names of the cost terms, in the order total_cost() sums them.
inline constexpr std::array<std::string_view, kCostTermCount> kCostTermNames{
    "inspection", "imperfect", "perfect", "corrective", "malfunction",
    "downtime",   "ordering",  "emergency_ordering", "holding", "purchase"};

using CostBreakdown = std::array<double, kCostTermCount>;

/// c_p0 * (gain / x_before)^eta.
double imperfect_cost(double gain, double x_before, const CostParams& params);

CostLedger accrue_holding(CostLedger ledger, int on_hand, double dt);

CostBreakdown cost_terms(const CostLedger& ledger, const CostParams& params);

double total_cost(const CostLedger& ledger, const CostParams& params);

enum class CostRateEstimator {
    RenewalReward,  // sum of costs over sum of cycle lengths
    PerCycleMean,   // mean of per-cycle ratios (biased, for comparison)
};

struct CycleOutcome {
    double cost;
    double length;
};

double cost_rate(std::span<const CycleOutcome> cycles, CostRateEstimator estimator = CostRateEstimator::RenewalReward);

}  // namespace cbm
