#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gnncert/bounds.hpp"

namespace gnncert {

// Axis-aligned rectangle, +-infinity endpoints allowed.
struct Rect {
    std::vector<std::pair<double, double>> sides; // (r_i, s_i), r_i <= s_i

    std::size_t dim() const { return sides.size(); }
    static Rect whole_space(std::size_t d);
    void validate() const;
};

// CLI syntax "lo:hi,lo:hi,..." with "inf" / "-inf" tokens.
Rect parse_rect(const std::string& text);

// P(N(0, nu_sq * Id) in rect) = prod_i (Phi(s_i/nu) - Phi(r_i/nu)).
// Infinite endpoints map to Phi = 0/1 exactly.
double limit_rect_prob(double nu_sq, const Rect& rect);
double limit_rect_prob(const LayerStats& stats, std::int64_t n_out, const Rect& rect);

enum class LocalizeMode { tv_shallow, convex_deep };

struct LocalizationReport {
    double p_limit = 0.0;
    double c_bound = 0.0;
    double lo = 0.0; // max(0, p_limit - c_bound)
    double hi = 1.0; // min(1, p_limit + c_bound)
    LocalizeMode mode = LocalizeMode::tv_shallow;
};

// Certified interval for P(output in rect): the limiting Gaussian rectangle
// probability +- the TV bound (shallow, L = 1 and n_out = 1) or the convex
// bound (deep), clipped to [0,1]. Rectangles are convex, so the convex
// distance applies.
LocalizationReport certified_interval(const ActivationSpec& act, const Architecture& arch,
                                      std::span<const double> x, const Rect& rect,
                                      const QuadratureScheme& scheme = {});

const char* mode_name(LocalizeMode m);

} // namespace gnncert
