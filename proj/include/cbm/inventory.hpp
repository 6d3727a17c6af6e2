#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace cbm {

class ShortageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Order {
    int quantity = 0;
    double placed_at = 0.0;
    double delivery_at = 0.0;
    int supplier_id = 0;
    bool emergency = false;
};

/// On-hand spares plus undelivered orders, kept sorted by delivery time.
struct InventoryState {
    int on_hand = 0;
    std::vector<Order> pipeline;

    int pipeline_quantity() const;
    int total_stock() const { return on_hand + pipeline_quantity(); }

    /// Inserts an order keeping the pipeline ordered by delivery time
    /// (stable for equal times).
    void place(const Order& order);

    /// Earliest pending delivery time, if any.
    std::optional<double> next_delivery() const;
};

/// Spares consumed per action. Imperfect actions replace a part with
/// probability ipms_prob.
struct SpareRequirements {
    int cms = 1;
    int pms = 1;
    double ipms_prob = 0.5;

    void validate() const;
};

/// S - total stock, floored at zero.
int order_up_to_quantity(const InventoryState& inv, int S);

/// True iff the post-action level is strictly above the reorder level.
bool should_order(double x_post_action, double T_reorder);

/// Moves every order due at or before now into on-hand stock.
InventoryState receive_due(const InventoryState& inv, double now);

/// On-hand stock plus orders delivered at or before the given time.
int projected_on_hand(const InventoryState& inv, double at);

/// Earliest time at which projected on-hand stock reaches need, measured
/// from now. Returns now when stock already suffices and nothing when the
/// pipeline can never cover it.
std::optional<double> coverage_time(const InventoryState& inv, int need, double now);

/// Throws ShortageError when fewer than n parts are on hand.
InventoryState consume(const InventoryState& inv, int n);

/// Quantity that restores total stock to S once pending_consumption parts
/// have been used for corrective maintenance.
int emergency_order_quantity(const InventoryState& inv, int S, int pending_consumption);

}  // namespace cbm
