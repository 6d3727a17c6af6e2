#include "cbm/cost.hpp"

#include <cmath>
#include <string>

#include "cbm/errors.hpp"

namespace cbm {

void CostParams::validate() const {
    const std::array<std::pair<const char*, double>, 9> positive{{{"c_ins", c_ins},
                                                                   {"c_p0", c_p0},
                                                                   {"c_c", c_c},
                                                                   {"c_d1", c_d1},
                                                                   {"c_d2", c_d2},
                                                                   {"c_h", c_h},
                                                                   {"c_o", c_o},
                                                                   {"c_oe", c_oe},
                                                                   {"c_pur", c_pur}}};
    for (const auto& [name, value] : positive) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw ConfigError(std::string("costs.") + name + " must be positive");
        }
    }
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw ConfigError("costs.eta must be non-negative");
    if (!(c_c > c_p0)) throw ConfigError("costs.c_c must exceed costs.c_p0 (corrective dearer than perfect preventive)");
    if (!(c_d2 > c_d1)) {
        throw ConfigError("costs.c_d2 must exceed costs.c_d1 (malfunction cost rate is lower than downtime cost rate)");
    }
    if (!(c_oe > c_o)) throw ConfigError("costs.c_oe must exceed costs.c_o (emergency orders dearer than ordinary)");
}

CostParams CostParams::scaled(double lambda) const {
    CostParams out = *this;
    for (double* c : {&out.c_ins, &out.c_p0, &out.c_c, &out.c_d1, &out.c_d2, &out.c_h, &out.c_o, &out.c_oe,
                      &out.c_pur}) {
        *c *= lambda;
    }
    return out;
}

double imperfect_cost(double gain, double x_before, const CostParams& params) {
    if (!(gain > 0.0 && gain < x_before)) {
        throw DomainError("imperfect_cost requires 0 < gain < x_before");
    }
    return params.c_p0 * std::pow(gain / x_before, params.eta);
}

CostLedger accrue_holding(CostLedger ledger, int on_hand, double dt) {
    if (dt < 0.0) throw DomainError("holding accrual requires dt >= 0");
    ledger.holding_integral += static_cast<double>(on_hand) * dt;
    return ledger;
}

CostBreakdown cost_terms(const CostLedger& l, const CostParams& p) {
    return {p.c_ins * static_cast<double>(l.n_ins),
            l.imperfect_cost_sum,
            p.c_p0 * static_cast<double>(l.n_p),
            p.c_c * static_cast<double>(l.n_c),
            p.c_d1 * l.d1,
            p.c_d2 * l.d2,
            p.c_o * static_cast<double>(l.n_o),
            p.c_oe * static_cast<double>(l.n_oe),
            p.c_h * l.holding_integral,
            p.c_pur * static_cast<double>(l.purchased)};
}

double total_cost(const CostLedger& ledger, const CostParams& params) {
    double sum = 0.0;
    for (double term : cost_terms(ledger, params)) sum += term;
    return sum;
}

double cost_rate(std::span<const CycleOutcome> cycles, CostRateEstimator estimator) {
    if (cycles.empty()) throw DomainError("cost_rate requires at least one cycle");
    if (estimator == CostRateEstimator::PerCycleMean) {
        double sum = 0.0;
        for (const auto& c : cycles) {
            if (!(c.length > 0.0)) throw DomainError("cost_rate: cycle of zero length");
            sum += c.cost / c.length;
        }
        return sum / static_cast<double>(cycles.size());
    }
    double cost = 0.0;
    double length = 0.0;
    for (const auto& c : cycles) {
        cost += c.cost;
        length += c.length;
    }
    if (!(length > 0.0)) throw DomainError("cost_rate: total cycle length is zero");
    return cost / length;
}

}  // namespace cbm
