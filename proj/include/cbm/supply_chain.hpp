#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbm/numerics.hpp"

namespace cbm {

enum class SupplierKind { Local, Main };

struct Supplier {
    int id = 0;
    double lead_time = 0.0;
    double availability_prob = 1.0;
    // Procurement cost used to check the lead-time/cost ordering of the chain.
    double ordering_cost = 0.0;
    SupplierKind kind = SupplierKind::Local;
};

using SupplyChain = std::vector<Supplier>;

struct SupplierSelection {
    std::optional<Supplier> supplier;
    // Set when an emergency enquiry found nobody, including the main supplier.
    bool retry = false;
};

/// Throws ConfigError naming the violated inequality unless the locals are
/// listed with strictly increasing lead time and cost, exactly one main
/// supplier exists, and it is slower and dearer than every local.
void validate_chain(const SupplyChain& suppliers);

/// Enquires locals by ascending lead time, each with a fresh uniform draw
/// compared against its availability probability. Emergency enquiries fall
/// back to the main supplier when no local can deliver.
SupplierSelection select_supplier(const SupplyChain& suppliers, bool emergency, RngStream& rng);

}  // namespace cbm
