#include <cmath>

#include "doctest.h"

#include "gnncert/tables.hpp"

using namespace gnncert;

namespace {

double cell(const std::vector<TableCell>& cells, int input, double cb, double cw, double n) {
    for (const TableCell& c : cells)
        if (c.input_index == input && c.cb == cb && c.cw == cw && (n == 0.0 || c.n == n))
            return c.value;
    FAIL("cell not found");
    return 0.0;
}

} // namespace

TEST_CASE("table 4 anchor cells") {
    const auto cells = table4_cells();
    CHECK(cells.size() == 24);
    CHECK(cell(cells, 0, 1, 1, 0) == doctest::Approx(85.04).epsilon(2e-4));
    CHECK(cell(cells, 0, 10, 1, 0) == doctest::Approx(31.83).epsilon(2e-4));
    CHECK(cell(cells, 0, 1, 0.1, 0) == doctest::Approx(14.80).epsilon(3e-4));
    CHECK(cell(cells, 2, 1, 1, 0) == doctest::Approx(83.86).epsilon(2e-4));
    CHECK(cell(cells, 3, 1, 1, 0) == doctest::Approx(33.09).epsilon(2e-4));
}

TEST_CASE("table 3 anchor cells") {
    const auto cells = table3_cells();
    CHECK(cells.size() == 144);
    CHECK(cell(cells, 0, 1, 1, 1e4) == doctest::Approx(88.59).epsilon(1e-4));
    CHECK(cell(cells, 0, 10, 1, 1e4) == doctest::Approx(331.57).epsilon(1e-4));
    CHECK(cell(cells, 2, 1, 1, 1e4) == doctest::Approx(106.14).epsilon(1e-4));
    CHECK(cell(cells, 3, 1, 1, 1e4) == doctest::Approx(2998.50).epsilon(1e-4));
    CHECK(cell(cells, 0, 1, 1, 1e9) == doctest::Approx(0.28).epsilon(1e-2));
}

TEST_CASE("table 2 anchors, raw and normalized") {
    const auto raw = table2_cells(false);
    CHECK(raw.size() == 144);
    CHECK(cell(raw, 0, 1, 1, 1) == doctest::Approx(1.4907119849998599).epsilon(1e-12));
    CHECK(cell(raw, 0, 1, 0.1, 1) == doctest::Approx(0.2129588).epsilon(1e-6));
    CHECK(cell(raw, 0, 1, 0.01, 1) == doctest::Approx(0.0222494).epsilon(1e-5));
    // 1/sqrt(n) scaling along the width axis.
    CHECK(cell(raw, 0, 1, 1, 100) == doctest::Approx(0.14907119849998599).epsilon(1e-12));

    const auto norm = table2_cells(true);
    CHECK(cell(norm, 3, 1, 1, 1) == doctest::Approx(0.44).epsilon(2e-2));
    CHECK(cell(norm, 0, 10, 1, 1) == doctest::Approx(0.47).epsilon(2e-2));
    // Row with kappa^2 = 1: normalization is a no-op.
    CHECK(cell(norm, 0, 1, 1, 1) == doctest::Approx(cell(raw, 0, 1, 1, 1)).epsilon(1e-14));
}

TEST_CASE("table 1 rows are finite and ordered as two families") {
    const auto rows = table1_rows();
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].family == "c2_growth_envelope");
    CHECK(rows[1].family == "variance_direct");
    for (const auto& r : rows) {
        CHECK(std::isfinite(r.d_tv));
        CHECK(std::isfinite(r.d_k));
        CHECK(std::isfinite(r.d_w1));
        CHECK(r.d_tv == doctest::Approx(2.0 * r.d_k).epsilon(1e-12));
    }
}

TEST_CASE("table CSV output is stable across calls") {
    for (int id : {1, 2, 3, 4}) {
        const std::string a = reproduce_table(id);
        const std::string b = reproduce_table(id);
        CHECK(a == b);
        CHECK(a.rfind('\n') == a.size() - 1);
        CHECK(a.find(id == 1 ? "d_tv" : "value") != std::string::npos);
    }
    CHECK(reproduce_table(2, true) != reproduce_table(2, false));
    CHECK_THROWS(reproduce_table(5));
}
