#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace gnncert {

// Fully connected architecture: biases ~ N(0, cb), weights ~ N(0, cw/fan_in).
struct Architecture {
    int depth = 1;                     // L, number of hidden layers (>= 1)
    std::int64_t n_in = 1;             // n_0
    std::vector<std::int64_t> hidden;  // n_1 .. n_L
    std::int64_t n_out = 1;            // n_{L+1}
    double cb = 1.0;
    double cw = 1.0;

    void validate() const; // widths >= 1, cb > 0, cw > 0, hidden.size() == depth

    // Width of layer ell in 0..L+1.
    std::int64_t width(int ell) const {
        if (ell == 0) return n_in;
        if (ell == depth + 1) return n_out;
        return hidden[static_cast<std::size_t>(ell - 1)];
    }
};

// Output of the deterministic layer recursion for a fixed input.
struct LayerStats {
    double o0 = 0.0;                 // mean squared input
    std::vector<double> o_seq;       // O^(1) .. O^(L)
    std::vector<double> c_seq;       // c_1 .. c_L
    std::optional<double> p_l2;      // ||P(|Z|)||_L2, absent if no P route applies
    double nu_sq = 0.0;              // cb + cw * O^(L), limiting output variance

    double o_last() const { return o_seq.back(); }
};

} // namespace gnncert
