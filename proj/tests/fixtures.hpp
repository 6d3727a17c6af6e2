#pragma once

// Scenario builders and a trace replay shared by the unit and acceptance tests.

#include <cmath>
#include <string>

#include "cbm/engine.hpp"

namespace fixture {

inline cbm::ScenarioConfig default_scenario(int replications = 1000, std::uint64_t seed = 20240601) {
    cbm::ScenarioConfig c;
    c.degradation.alpha0 = 2.0;
    c.degradation.beta = 2.0;
    c.degradation.L = 10.0;
    c.degradation.gamma_rate = 10.0;
    c.degradation.finalize();
    c.policy = {7.0, 2, 5.0, 2, 0.05, 0.9};
    c.costs.c_ins = 10.0;
    c.costs.c_p0 = 200.0;
    c.costs.c_c = 1000.0;
    c.costs.c_d1 = 50.0;
    c.costs.c_d2 = 500.0;
    c.costs.c_h = 1.0;
    c.costs.c_o = 20.0;
    c.costs.c_oe = 150.0;
    c.costs.c_pur = 100.0;
    c.costs.eta = 1.0;
    c.suppliers = {
        {1, 0.5, 0.9, 5.0, cbm::SupplierKind::Local},
        {2, 1.0, 0.8, 8.0, cbm::SupplierKind::Local},
        {3, 5.0, 1.0, 50.0, cbm::SupplierKind::Main},
    };
    c.requirements = {1, 1, 0.5};
    c.replications = replications;
    c.seed = seed;
    return c;
}

/// Suppliers that always deliver, so shortages can only come from the policy.
inline cbm::ScenarioConfig reliable_suppliers(cbm::ScenarioConfig c) {
    for (auto& s : c.suppliers) s.availability_prob = 1.0;
    return c;
}

/// Ledger and stock facts recomputed from a trace alone.
struct Replay {
    cbm::CostLedger ledger;
    long consumed = 0;
    long delivered = 0;
    int min_on_hand = 0;
    int outstanding = 0;
    bool order_restores_s = true;   // every ordinary order brings total stock to S
    bool times_nondecreasing = true;
    bool on_hand_consistent = true; // each event's stock follows from the previous one
    std::string problem;
};

inline Replay replay(const cbm::ReplicationResult& r, int S) {
    using cbm::EventKind;
    Replay out;
    int on_hand = S;
    out.min_on_hand = S;
    double last = 0.0;
    double failure = 0.0, detected = 0.0;
    for (const auto& e : r.trace) {
        if (e.time < last) out.times_nondecreasing = false;
        out.ledger.holding_integral += static_cast<double>(on_hand) * (e.time - last);
        last = e.time;
        int expected = on_hand;
        switch (e.kind) {
            case EventKind::Delivery:
                expected += e.quantity;
                out.delivered += e.quantity;
                out.outstanding -= e.quantity;
                break;
            case EventKind::Inspection: ++out.ledger.n_ins; break;
            case EventKind::Failure: failure = e.time; break;
            case EventKind::FailureDetected:
                detected = e.time;
                out.ledger.d1 = e.time - failure;
                break;
            case EventKind::Imperfect:
                ++out.ledger.n_ip;
                out.ledger.imperfect_cost_sum += e.amount;
                expected -= e.quantity;
                out.consumed += e.quantity;
                break;
            case EventKind::Perfect:
                ++out.ledger.n_p;
                expected -= e.quantity;
                out.consumed += e.quantity;
                break;
            case EventKind::Corrective:
                ++out.ledger.n_c;
                out.ledger.d2 = e.time - detected;
                expected -= e.quantity;
                out.consumed += e.quantity;
                break;
            case EventKind::LocalOrder:
            case EventKind::MainOrder:
                if (e.kind == EventKind::LocalOrder) {
                    ++out.ledger.n_o;
                } else {
                    ++out.ledger.n_oe;
                }
                out.ledger.purchased += e.quantity;
                out.outstanding += e.quantity;
                if (!e.emergency && on_hand + out.outstanding != S) out.order_restores_s = false;
                break;
            case EventKind::PreventiveShortage:
            case EventKind::EnquiryFailed: break;
        }
        if (e.on_hand != expected) {
            out.on_hand_consistent = false;
            if (out.problem.empty()) out.problem = std::string("stock jump at ") + cbm::to_string(e.kind);
        }
        on_hand = e.on_hand;
        out.min_on_hand = std::min(out.min_on_hand, on_hand);
    }
    return out;
}

/// Term-by-term total written out independently of cost_terms().
inline double oracle_total(const cbm::CostLedger& l, const cbm::CostParams& p) {
    double sum = 0.0;
    sum += p.c_ins * static_cast<double>(l.n_ins);
    sum += l.imperfect_cost_sum;
    sum += p.c_p0 * static_cast<double>(l.n_p);
    sum += p.c_c * static_cast<double>(l.n_c);
    sum += p.c_d1 * l.d1;
    sum += p.c_d2 * l.d2;
    sum += p.c_o * static_cast<double>(l.n_o);
    sum += p.c_oe * static_cast<double>(l.n_oe);
    sum += p.c_h * l.holding_integral;
    sum += p.c_pur * static_cast<double>(l.purchased);
    return sum;
}

}  // namespace fixture
