#include <doctest.h>

#include "cbm/inventory.hpp"

using namespace cbm;

TEST_CASE("place keeps the pipeline sorted and stable") {
    InventoryState inv{1, {}};
    inv.place({2, 0.0, 5.0, 3, false});
    inv.place({1, 0.0, 1.0, 1, false});
    inv.place({4, 0.0, 5.0, 2, false});
    REQUIRE(inv.pipeline.size() == 3);
    CHECK(inv.pipeline[0].delivery_at == 1.0);
    CHECK(inv.pipeline[1].supplier_id == 3);
    CHECK(inv.pipeline[2].supplier_id == 2);
    CHECK(inv.pipeline_quantity() == 7);
    CHECK(inv.total_stock() == 8);
    CHECK(inv.next_delivery() == 1.0);
    CHECK_FALSE(InventoryState{}.next_delivery().has_value());
}

TEST_CASE("order_up_to_quantity and should_order") {
    InventoryState inv{1, {}};
    inv.place({1, 0.0, 2.0, 1, false});
    CHECK(order_up_to_quantity(inv, 5) == 3);
    CHECK(order_up_to_quantity(inv, 2) == 0);
    CHECK(order_up_to_quantity(inv, 1) == 0);
    CHECK(should_order(5.01, 5.0));
    CHECK_FALSE(should_order(5.0, 5.0));
    CHECK_FALSE(should_order(0.0, 5.0));
}

TEST_CASE("receive_due and projected_on_hand") {
    InventoryState inv{0, {}};
    inv.place({1, 0.0, 1.0, 1, false});
    inv.place({2, 0.0, 3.0, 2, false});
    CHECK(projected_on_hand(inv, 0.5) == 0);
    CHECK(projected_on_hand(inv, 1.0) == 1);
    CHECK(projected_on_hand(inv, 10.0) == 3);
    const auto got = receive_due(inv, 1.0);
    CHECK(got.on_hand == 1);
    REQUIRE(got.pipeline.size() == 1);
    CHECK(got.pipeline[0].delivery_at == 3.0);
    CHECK(got.total_stock() == inv.total_stock());
}

TEST_CASE("coverage_time") {
    InventoryState inv{1, {}};
    CHECK(coverage_time(inv, 1, 4.0) == 4.0);
    CHECK_FALSE(coverage_time(inv, 2, 4.0).has_value());
    inv.place({1, 0.0, 6.0, 1, false});
    inv.place({1, 0.0, 9.0, 2, false});
    CHECK(coverage_time(inv, 2, 4.0) == 6.0);
    CHECK(coverage_time(inv, 3, 4.0) == 9.0);
    CHECK(coverage_time(inv, 2, 7.0) == 7.0);
    CHECK(coverage_time(inv, 0, 4.0) == 4.0);
}

TEST_CASE("consume") {
    InventoryState inv{2, {}};
    CHECK(consume(inv, 2).on_hand == 0);
    CHECK(consume(inv, 0).on_hand == 2);
    CHECK_THROWS_AS(consume(inv, 3), ShortageError);
}

TEST_CASE("emergency_order_quantity") {
    InventoryState inv{0, {}};
    CHECK(emergency_order_quantity(inv, 2, 1) == 3);
    inv.place({1, 0.0, 5.0, 1, false});
    CHECK(emergency_order_quantity(inv, 2, 1) == 2);
}

TEST_CASE("requirements validation") {
    CHECK_NOTHROW(SpareRequirements{}.validate());
    CHECK_THROWS(SpareRequirements{0, 1, 0.5}.validate());
    CHECK_THROWS(SpareRequirements{1, 1, 1.5}.validate());
}
