#include "cbm/inventory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbm/numerics.hpp"

namespace cbm {

int InventoryState::pipeline_quantity() const {
    int total = 0;
    for (const auto& order : pipeline) total += order.quantity;
    return total;
}

void InventoryState::place(const Order& order) {
    auto pos = std::upper_bound(pipeline.begin(), pipeline.end(), order.delivery_at,
                                [](double t, const Order& o) { return t < o.delivery_at; });
    pipeline.insert(pos, order);
}

std::optional<double> InventoryState::next_delivery() const {
    if (pipeline.empty()) return std::nullopt;
    return pipeline.front().delivery_at;
}

void SpareRequirements::validate() const {
    if (cms < 1) throw DomainError("requirements.cms must be at least 1");
    if (pms < 1) throw DomainError("requirements.pms must be at least 1");
    if (!(ipms_prob >= 0.0 && ipms_prob <= 1.0)) {
        throw DomainError("requirements.ipms_prob must lie in [0, 1]");
    }
}

int order_up_to_quantity(const InventoryState& inv, int S) {
    return std::max(0, S - inv.total_stock());
}

bool should_order(double x_post_action, double T_reorder) {
    return x_post_action > T_reorder;
}

InventoryState receive_due(const InventoryState& inv, double now) {
    InventoryState next;
    next.on_hand = inv.on_hand;
    for (const auto& order : inv.pipeline) {
        if (order.delivery_at <= now) {
            next.on_hand += order.quantity;
        } else {
            next.pipeline.push_back(order);
        }
    }
    return next;
}

int projected_on_hand(const InventoryState& inv, double at) {
    int stock = inv.on_hand;
    for (const auto& order : inv.pipeline) {
        if (order.delivery_at <= at) stock += order.quantity;
    }
    return stock;
}

std::optional<double> coverage_time(const InventoryState& inv, int need, double now) {
    int stock = inv.on_hand;
    if (stock >= need) return now;
    for (const auto& order : inv.pipeline) {
        stock += order.quantity;
        if (stock >= need) return std::max(now, order.delivery_at);
    }
    return std::nullopt;
}

InventoryState consume(const InventoryState& inv, int n) {
    if (inv.on_hand < n) {
        throw ShortageError("shortage: " + std::to_string(n) + " parts needed, " + std::to_string(inv.on_hand) +
                            " on hand");
    }
    InventoryState next = inv;
    next.on_hand -= n;
    return next;
}

int emergency_order_quantity(const InventoryState& inv, int S, int pending_consumption) {
    return S + pending_consumption - inv.total_stock();
}

}  // namespace cbm
