#pragma once

#include <string>
#include <vector>

#include "gnncert/bounds.hpp"

namespace gnncert {

// Built-in benchmark lattice shared by the table grids:
//   inputs x in { 0-vector, 0.1-vector, (0.5,-0.5,0.5,-0.5), 10-vector } (n0 = 4),
//   cb in {1, 10}, cw in {0.01, 0.1, 1}, ReLU activation.
// Table 2: shallow TV-bound grid, n1 in {1, 10, ..., 1e5}.
// Table 3: deep (L = 3) convex C_bound grid, n in {1e4, ..., 1e9}.
// Table 4: the deep prefactor C1 alone.
// Table 1: side-by-side theorem constants for one smooth-activation config.
struct TableCell {
    int input_index = 0; // into table_inputs()
    double cb = 0.0;
    double cw = 0.0;
    double n = 0.0;   // hidden width (0 for table 4)
    double value = 0.0;
};

struct Table1Row {
    std::string family; // "c2_growth_envelope" or "variance_direct"
    double d_tv = 0.0;
    double d_k = 0.0;
    double d_w1 = 0.0;
};

const std::vector<std::vector<double>>& table_inputs();

std::vector<TableCell> table2_cells(bool normalized, const QuadratureScheme& scheme = {});
std::vector<TableCell> table3_cells(const QuadratureScheme& scheme = {});
std::vector<TableCell> table4_cells(const QuadratureScheme& scheme = {});
std::vector<Table1Row> table1_rows(const QuadratureScheme& scheme = {});

// Long-format CSV (header row, LF endings, cells printed to two decimals).
std::string reproduce_table(int id, bool table2_normalized = false,
                            const QuadratureScheme& scheme = {});

} // namespace gnncert
