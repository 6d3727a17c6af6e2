#include "cbm/supply_chain.hpp"

#include <algorithm>
#include <cmath>

namespace cbm {

namespace {

std::string label(const Supplier& s) {
    return (s.kind == SupplierKind::Main ? "main supplier " : "local supplier ") + std::to_string(s.id);
}

}  // namespace

void validate_chain(const SupplyChain& suppliers) {
    const Supplier* main = nullptr;
    std::vector<const Supplier*> locals;
    for (const auto& s : suppliers) {
        if (!(s.lead_time > 0.0) || !std::isfinite(s.lead_time)) {
            throw ConfigError(label(s) + ": lead_time must be positive");
        }
        if (!(s.availability_prob >= 0.0 && s.availability_prob <= 1.0)) {
            throw ConfigError(label(s) + ": availability_prob must lie in [0, 1]");
        }
        if (!(s.ordering_cost > 0.0)) {
            throw ConfigError(label(s) + ": ordering_cost must be positive");
        }
        if (s.kind == SupplierKind::Main) {
            if (main != nullptr) throw ConfigError("supply chain must have exactly one main supplier, found several");
            main = &s;
        } else {
            locals.push_back(&s);
        }
    }
    if (main == nullptr) throw ConfigError("supply chain must have exactly one main supplier, found none");
    if (locals.empty()) throw ConfigError("supply chain needs at least one local supplier");

    for (std::size_t i = 1; i < locals.size(); ++i) {
        if (!(locals[i - 1]->lead_time < locals[i]->lead_time)) {
            throw ConfigError("lead times must satisfy LT_s" + std::to_string(i) + " < LT_s" + std::to_string(i + 1));
        }
        if (!(locals[i - 1]->ordering_cost < locals[i]->ordering_cost)) {
            throw ConfigError("ordering costs must satisfy C_s" + std::to_string(i) + " < C_s" +
                              std::to_string(i + 1));
        }
    }
    const Supplier& slowest = *locals.back();
    if (!(slowest.lead_time < main->lead_time)) {
        throw ConfigError("lead times must satisfy LT_s" + std::to_string(locals.size()) + " < LT_se");
    }
    if (!(slowest.ordering_cost < main->ordering_cost)) {
        throw ConfigError("ordering costs must satisfy C_s" + std::to_string(locals.size()) + " < C_se");
    }
}

SupplierSelection select_supplier(const SupplyChain& suppliers, bool emergency, RngStream& rng) {
    std::vector<const Supplier*> locals;
    const Supplier* main = nullptr;
    for (const auto& s : suppliers) {
        if (s.kind == SupplierKind::Main) {
            main = &s;
        } else {
            locals.push_back(&s);
        }
    }
    std::stable_sort(locals.begin(), locals.end(),
                     [](const Supplier* a, const Supplier* b) { return a->lead_time < b->lead_time; });

    for (const Supplier* s : locals) {
        if (rng.uniform() < s->availability_prob) return {*s, false};
    }
    if (!emergency) return {std::nullopt, false};
    if (main != nullptr && rng.uniform() < main->availability_prob) return {*main, false};
    return {std::nullopt, true};
}

}  // namespace cbm
