#include "gnncert/tables.hpp"

#include <cmath>
#include <cstdio>

#include "gnncert/errors.hpp"

namespace gnncert {

namespace {

const std::vector<double> kCb = {1.0, 10.0};
const std::vector<double> kCw = {0.01, 0.1, 1.0};
const std::vector<double> kShallowWidths = {1e0, 1e1, 1e2, 1e3, 1e4, 1e5};
const std::vector<double> kDeepWidths = {1e4, 1e5, 1e6, 1e7, 1e8, 1e9};

Architecture shallow_arch(double cb, double cw, double n1) {
    Architecture a;
    a.depth = 1;
    a.n_in = 4;
    a.hidden = {static_cast<std::int64_t>(n1)};
    a.n_out = 1;
    a.cb = cb;
    a.cw = cw;
    return a;
}

Architecture deep_arch(double cb, double cw, double n) {
    Architecture a;
    a.depth = 3;
    a.n_in = 4;
    a.hidden = {static_cast<std::int64_t>(n), static_cast<std::int64_t>(n),
                static_cast<std::int64_t>(n)};
    a.n_out = 1;
    a.cb = cb;
    a.cw = cw;
    return a;
}

std::string two_decimals(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string cells_csv(const std::vector<TableCell>& cells, bool with_n) {
    std::string out = with_n ? "input,cb,cw,n,value\n" : "input,cb,cw,value\n";
    char buf[128];
    for (const TableCell& c : cells) {
        const auto& x = table_inputs()[static_cast<std::size_t>(c.input_index)];
        std::snprintf(buf, sizeof buf, "\"(%g,%g,%g,%g)\",%g,%g", x[0], x[1], x[2], x[3], c.cb,
                      c.cw);
        out += buf;
        if (with_n) {
            std::snprintf(buf, sizeof buf, ",%g", c.n);
            out += buf;
        }
        out += "," + two_decimals(c.value) + "\n";
    }
    return out;
}

} // namespace

const std::vector<std::vector<double>>& table_inputs() {
    static const std::vector<std::vector<double>> inputs = {
        {0.0, 0.0, 0.0, 0.0},
        {0.1, 0.1, 0.1, 0.1},
        {0.5, -0.5, 0.5, -0.5},
        {10.0, 10.0, 10.0, 10.0},
    };
    return inputs;
}

std::vector<TableCell> table2_cells(bool normalized, const QuadratureScheme& scheme) {
    const ActivationSpec relu = make_activation(ActKind::relu);
    std::vector<TableCell> cells;
    for (int xi = 0; xi < 4; ++xi) {
        const auto& x = table_inputs()[static_cast<std::size_t>(xi)];
        for (double cb : kCb)
            for (double cw : kCw)
                for (double n : kShallowWidths) {
                    const Architecture arch = shallow_arch(cb, cw, n);
                    double v = shallow_bounds(relu, arch, x, scheme)[1].value; // TV
                    if (normalized) v /= std::sqrt(cb + cw * o_zero(x, arch.n_in));
                    cells.push_back({xi, cb, cw, n, v});
                }
    }
    return cells;
}

std::vector<TableCell> table3_cells(const QuadratureScheme& scheme) {
    const ActivationSpec relu = make_activation(ActKind::relu);
    std::vector<TableCell> cells;
    for (int xi = 0; xi < 4; ++xi) {
        const auto& x = table_inputs()[static_cast<std::size_t>(xi)];
        for (double cb : kCb)
            for (double cw : kCw)
                for (double n : kDeepWidths) {
                    const Architecture arch = deep_arch(cb, cw, n);
                    cells.push_back(
                        {xi, cb, cw, n, deep_convex_bound(relu, arch, x, scheme).value});
                }
    }
    return cells;
}

std::vector<TableCell> table4_cells(const QuadratureScheme& scheme) {
    const ActivationSpec relu = make_activation(ActKind::relu);
    std::vector<TableCell> cells;
    for (int xi = 0; xi < 4; ++xi) {
        const auto& x = table_inputs()[static_cast<std::size_t>(xi)];
        for (double cb : kCb)
            for (double cw : kCw) {
                const Architecture arch = deep_arch(cb, cw, 1e4); // C1 is width-free
                const BoundReport rep = deep_convex_bound(relu, arch, x, scheme);
                cells.push_back({xi, cb, cw, 0.0, rep.constants.at("C1")});
            }
    }
    return cells;
}

std::vector<Table1Row> table1_rows(const QuadratureScheme& scheme) {
    // One smooth-activation configuration evaluated under both bound families.
    const ActivationSpec act = make_activation(ActKind::monomial, 3);
    Architecture arch;
    arch.depth = 1;
    arch.n_in = 1;
    arch.hidden = {1};
    arch.n_out = 1;
    arch.cb = 1.0;
    arch.cw = 1.0;
    const std::vector<double> x = {1.0};

    const auto comp = comparison_bounds(act, arch, x, scheme);
    const auto direct = shallow_bounds(act, arch, x, scheme);
    return {
        {"c2_growth_envelope", comp[1].value, comp[0].value, comp[2].value},
        {"variance_direct", direct[1].value, direct[0].value, direct[2].value},
    };
}

std::string reproduce_table(int id, bool table2_normalized, const QuadratureScheme& scheme) {
    switch (id) {
        case 1: {
            std::string out = "family,d_tv,d_k,d_w1,note\n";
            for (const Table1Row& row : table1_rows(scheme))
                out += row.family + "," + two_decimals(row.d_tv) + "," + two_decimals(row.d_k) +
                       "," + two_decimals(row.d_w1) + ",computed\n";
            return out;
        }
        case 2: return cells_csv(table2_cells(table2_normalized, scheme), true);
        case 3: return cells_csv(table3_cells(scheme), true);
        case 4: return cells_csv(table4_cells(scheme), false);
        default: throw DomainError("table id must be 1, 2, 3 or 4");
    }
}

} // namespace gnncert
