#include "cbm/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace cbm {

namespace {

enum Substream : std::uint32_t { kPathStream = 0, kMaintenanceStream = 1, kSupplyStream = 2 };

class CycleSimulator {
public:
    CycleSimulator(const ScenarioConfig& config, std::uint64_t stream_id)
        : cfg_(config),
          deg_(config.degradation),
          policy_(config.policy),
          path_rng_(config.seed, stream_id, kPathStream),
          maint_rng_(config.seed, stream_id, kMaintenanceStream),
          supply_rng_(config.seed, stream_id, kSupplyStream) {
        result_.stream_id = stream_id;
    }

    ReplicationResult run() {
        const double step = deg_.path_step;
        state_ = SystemState::as_good_as_new(deg_);
        inv_.on_hand = policy_.S;
        long index = 0;

        InspectionSchedule schedule = plan_next(false);
        while (true) {
            if (ledger_.n_ins >= cfg_.options.max_inspections_per_cycle) {
                throw SimulationError("cycle exceeded the inspection cap without a failure");
            }
            const long next_index = grid_index(schedule, index);
            advance_into(state_, next_index - index, deg_, path_rng_, path_);
            // Pin every time to its grid index so event times compare exactly.
            for (std::size_t i = 0; i < path_.size(); ++i) {
                path_[i].time = static_cast<double>(index + static_cast<long>(i)) * step;
            }
            index = next_index;
            state_.t = path_.back().time;

            std::optional<double> crossing;
            if (state_.x >= deg_.L) crossing = first_passage(path_, deg_.L);
            deliver_until(state_.t, crossing);

            ++ledger_.n_ins;
            emit(state_.t, EventKind::Inspection);

            const ActionKind action = classify_action(state_.x, state_.k, policy_, deg_.L);
            if (action == ActionKind::Corrective) {
                corrective(*crossing);
                break;
            }
            if (action != ActionKind::NoAction) preventive(action);

            bool attempted = false;
            if (should_order(state_.x, policy_.T_reorder)) {
                attempted = true;
                ordinary_order();
            }
            schedule = plan_next(attempted);
        }
        finish();
        return std::move(result_);
    }

private:
    // Schedules the next inspection. A requirement no delivery can cover
    // triggers an ordinary order when none was attempted this epoch.
    InspectionSchedule plan_next(bool order_attempted) {
        auto schedule = schedule_next_inspection(state_, inv_, policy_, deg_, cfg_.requirements,
                                                 cfg_.options.defer_for_spares);
        if (schedule.shortfall && !order_attempted && ordinary_order()) {
            schedule = schedule_next_inspection(state_, inv_, policy_, deg_, cfg_.requirements,
                                                cfg_.options.defer_for_spares);
        }
        return schedule;
    }

    long grid_index(const InspectionSchedule& schedule, long index) const {
        const double step = deg_.path_step;
        if (schedule.deferred) {
            // Round up so the awaited delivery has arrived by the inspection.
            long next = static_cast<long>(std::ceil(schedule.t_next / step));
            while (static_cast<double>(next) * step < schedule.t_next) ++next;
            return std::max(next, index + 1);
        }
        const long steps = std::lround((schedule.t_candidate - state_.t) / step);
        return index + std::max(1L, steps);
    }

    void emit(double time, EventKind kind, int quantity = 0, double amount = 0.0, bool emergency = false) {
        ledger_ = accrue_holding(ledger_, inv_.on_hand, time - last_mark_);
        last_mark_ = time;
        switch (kind) {
            case EventKind::Delivery: inv_.on_hand += quantity; break;
            case EventKind::Imperfect:
            case EventKind::Perfect:
            case EventKind::Corrective:
                inv_ = consume(inv_, quantity);
                result_.consumed += quantity;
                break;
            default: break;
        }
        if (cfg_.options.trace) {
            result_.trace.push_back({time, kind, inv_.on_hand, state_.x, quantity, amount, emergency});
        }
    }

    // Receives every delivery due by `until`, interleaving the latent failure
    // event so the trace stays in time order.
    void deliver_until(double until, std::optional<double> crossing = std::nullopt) {
        while (!inv_.pipeline.empty() && inv_.pipeline.front().delivery_at <= until) {
            const Order order = inv_.pipeline.front();
            if (crossing && *crossing <= order.delivery_at) {
                emit_failure(*crossing);
                crossing.reset();
            }
            inv_.pipeline.erase(inv_.pipeline.begin());
            emit(order.delivery_at, EventKind::Delivery, order.quantity, 0.0, order.emergency);
        }
        if (crossing) emit_failure(*crossing);
    }

    void emit_failure(double time) {
        result_.failure_time = time;
        emit(time, EventKind::Failure);
    }

    void preventive(ActionKind action) {
        int needed = cfg_.requirements.pms;
        if (action == ActionKind::Imperfect) {
            needed = maint_rng_.uniform() < cfg_.requirements.ipms_prob ? 1 : 0;
        }
        if (inv_.on_hand < needed) {
            ++result_.preventive_shortages;
            emit(state_.t, EventKind::PreventiveShortage, needed);
            return;
        }
        if (action == ActionKind::Imperfect) {
            const double x_before = state_.x;
            auto [next, outcome] = apply_imperfect(state_, deg_, maint_rng_);
            const double cost = imperfect_cost(outcome.gain, x_before, cfg_.costs);
            state_ = next;
            ++ledger_.n_ip;
            ledger_.imperfect_cost_sum += cost;
            emit(state_.t, EventKind::Imperfect, needed, cost);
        } else {
            state_ = apply_perfect(state_, deg_);
            ++ledger_.n_p;
            result_.last_renewal_time = state_.t;
            emit(state_.t, EventKind::Perfect, needed);
        }
    }

    void record_order(const Supplier& supplier, int quantity, double now, bool emergency) {
        inv_.place({quantity, now, now + supplier.lead_time, supplier.id, emergency});
        ledger_.purchased += quantity;
        if (supplier.kind == SupplierKind::Main) {
            ++ledger_.n_oe;
            emit(now, EventKind::MainOrder, quantity, 0.0, emergency);
        } else {
            ++ledger_.n_o;
            emit(now, EventKind::LocalOrder, quantity, 0.0, emergency);
        }
    }

    // Order-up-to-S from the local suppliers; returns whether an order was placed.
    bool ordinary_order() {
        const int quantity = order_up_to_quantity(inv_, policy_.S);
        if (quantity <= 0) return false;
        const auto selection = select_supplier(cfg_.suppliers, false, supply_rng_);
        if (!selection.supplier) {
            emit(state_.t, EventKind::EnquiryFailed);
            return false;
        }
        record_order(*selection.supplier, quantity, state_.t, false);
        return true;
    }

    void corrective(double crossing) {
        const double detected = state_.t;
        const int cms = cfg_.requirements.cms;
        ledger_.n_c = 1;
        ledger_.d1 = detected - crossing;
        result_.detection_time = detected;
        emit(detected, EventKind::FailureDetected);

        double repair_at = detected;
        if (inv_.on_hand < cms) {
            double enquiry = detected;
            const double interval = cfg_.retry_interval();
            while (true) {
                deliver_until(enquiry);
                const auto selection = select_supplier(cfg_.suppliers, true, supply_rng_);
                if (selection.supplier) {
                    record_order(*selection.supplier, emergency_order_quantity(inv_, policy_.S, cms), enquiry, true);
                    break;
                }
                emit(enquiry, EventKind::EnquiryFailed, 0, 0.0, true);
                if (++result_.emergency_retries > cfg_.options.emergency_retry_cap) {
                    throw SimulationError("emergency re-enquiry cap exceeded without a supplier");
                }
                const double next_enquiry = enquiry + interval;
                const auto covered = coverage_time(inv_, cms, enquiry);
                if (covered && *covered <= next_enquiry) break;
                enquiry = next_enquiry;
            }
            repair_at = *coverage_time(inv_, cms, enquiry);
            deliver_until(repair_at);
        }
        ledger_.d2 = repair_at - detected;
        state_ = apply_perfect(state_, deg_);
        state_.t = repair_at;
        emit(repair_at, EventKind::Corrective, cms);
        result_.cycle_length = repair_at;
    }

    void finish() {
        result_.ledger = ledger_;
        result_.total_cost = total_cost(ledger_, cfg_.costs);
        result_.availability = availability_of(result_);
        result_.on_hand_end = inv_.on_hand;
        result_.pipeline_end = inv_.pipeline_quantity();
    }

    const ScenarioConfig& cfg_;
    const DegradationParams& deg_;
    const PolicyParams& policy_;
    RngStream path_rng_;
    RngStream maint_rng_;
    RngStream supply_rng_;
    SystemState state_;
    InventoryState inv_;
    CostLedger ledger_;
    ReplicationResult result_;
    DegradationPath path_;
    double last_mark_ = 0.0;
};

double standard_error(double sum, double sum_sq, int n) {
    if (n < 2) return 0.0;
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
    return std::sqrt(var / n);
}

}  // namespace

void ScenarioConfig::validate() const {
    degradation.validate();
    policy.validate(degradation.L);
    costs.validate();
    validate_chain(suppliers);
    try {
        requirements.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (replications < 1) throw ConfigError("simulation.replications must be at least 1");
    if (options.workers < 1) throw ConfigError("simulation.workers must be at least 1");
    if (options.emergency_retry_interval < 0.0) {
        throw ConfigError("simulation.emergency_retry_interval must be non-negative");
    }
}

double ScenarioConfig::retry_interval() const {
    if (options.emergency_retry_interval > 0.0) return options.emergency_retry_interval;
    double fastest = 0.0;
    for (const auto& s : suppliers) {
        if (s.kind == SupplierKind::Local && (fastest == 0.0 || s.lead_time < fastest)) fastest = s.lead_time;
    }
    return fastest > 0.0 ? fastest : 1.0;
}

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Delivery: return "delivery";
        case EventKind::Failure: return "failure";
        case EventKind::Inspection: return "inspection";
        case EventKind::FailureDetected: return "failure_detected";
        case EventKind::Imperfect: return "imperfect";
        case EventKind::Perfect: return "perfect";
        case EventKind::Corrective: return "corrective";
        case EventKind::PreventiveShortage: return "preventive_shortage";
        case EventKind::LocalOrder: return "local_order";
        case EventKind::MainOrder: return "main_order";
        case EventKind::EnquiryFailed: return "enquiry_failed";
    }
    return "unknown";
}

double availability_of(const ReplicationResult& result) {
    if (!(result.cycle_length > 0.0)) throw DomainError("availability requires a positive cycle length");
    return 1.0 - result.ledger.d2 / result.cycle_length;
}

ReplicationResult run_cycle(const ScenarioConfig& config, std::uint64_t stream_id) {
    return CycleSimulator(config, stream_id).run();
}

double cost_rate(std::span<const ReplicationResult> results, CostRateEstimator estimator) {
    std::vector<CycleOutcome> cycles;
    cycles.reserve(results.size());
    for (const auto& r : results) cycles.push_back({r.total_cost, r.cycle_length});
    return cost_rate(std::span<const CycleOutcome>(cycles), estimator);
}

BatchStats run_replications(const ScenarioConfig& config, bool keep_replications) {
    if (config.replications < 1) throw ConfigError("simulation.replications must be at least 1");
    const int n = config.replications;
    std::vector<ReplicationResult> results(static_cast<std::size_t>(n));

    const int workers = std::clamp(config.options.workers, 1, n);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    int failure_index = n;
    std::mutex failure_mutex;
    auto work = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                results[static_cast<std::size_t>(i)] = run_cycle(config, static_cast<std::uint64_t>(i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                // Report the lowest failing stream so errors do not depend on scheduling.
                if (i < failure_index) {
                    failure_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    BatchStats stats;
    stats.n = n;
    double sum_cost = 0.0, sum_length = 0.0;
    double sum_av = 0.0, sum_av_sq = 0.0;
    CostBreakdown term_sums{};
    std::vector<double> availabilities;
    availabilities.reserve(results.size());
    for (const auto& r : results) {
        sum_cost += r.total_cost;
        sum_length += r.cycle_length;
        sum_av += r.availability;
        sum_av_sq += r.availability * r.availability;
        availabilities.push_back(r.availability);
        const auto terms = cost_terms(r.ledger, config.costs);
        for (std::size_t j = 0; j < kCostTermCount; ++j) term_sums[j] += terms[j];
    }
    stats.cost_rate = config.options.estimator == CostRateEstimator::RenewalReward
                          ? sum_cost / sum_length
                          : cost_rate(std::span<const ReplicationResult>(results), config.options.estimator);
    stats.mean_cycle_length = sum_length / n;
    stats.mean_total_cost = sum_cost / n;
    stats.availability = sum_av / n;
    stats.availability_se = standard_error(sum_av, sum_av_sq, n);
    for (std::size_t j = 0; j < kCostTermCount; ++j) stats.cost_rate_terms[j] = term_sums[j] / sum_length;

    if (n >= 2) {
        // Delta-method standard error of the ratio estimator.
        const double ratio = sum_cost / sum_length;
        double resid_sq = 0.0;
        for (const auto& r : results) {
            const double e = r.total_cost - ratio * r.cycle_length;
            resid_sq += e * e;
        }
        stats.cost_rate_se = std::sqrt(resid_sq / (static_cast<double>(n) * (n - 1))) / stats.mean_cycle_length;
        if (config.options.estimator == CostRateEstimator::PerCycleMean) {
            double s = 0.0, s2 = 0.0;
            for (const auto& r : results) {
                const double q = r.total_cost / r.cycle_length;
                s += q;
                s2 += q * q;
            }
            stats.cost_rate_se = standard_error(s, s2, n);
        }
    }

    const auto q_index = static_cast<std::size_t>(std::floor(0.05 * (n - 1)));
    std::nth_element(availabilities.begin(), availabilities.begin() + static_cast<std::ptrdiff_t>(q_index),
                     availabilities.end());
    stats.availability_q05 = availabilities[q_index];

    if (keep_replications) stats.replications = std::move(results);
    return stats;
}

}  // namespace cbm
