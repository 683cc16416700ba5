#pragma once

#include <array>
#include <map>
#include <string>

#include "gnncert/recursion.hpp"

namespace gnncert {

enum class Metric { kolmogorov, total_variation, wasserstein1, convex };
enum class Provenance {
    shallow_direct,      // direct shallow bounds (Kolmogorov / TV / W1)
    shallow_comparison,          // C^2 growth-envelope comparison bounds
    deep_convex,  // deep convex-distance bound, prefactors C1..C3
    deep_w1,      // deep 1-Wasserstein bound, prefactors K1..K3
    w1_conversion,    // convex-from-W1 square-root conversion
};

struct BoundReport {
    Metric metric = Metric::kolmogorov;
    Provenance provenance = Provenance::shallow_direct;
    double value = 0.0;
    // min(1, value) for the probability metrics (K, TV, convex); equal to
    // value for W1, which is not bounded by 1.
    double effective = 0.0;
    std::map<std::string, double> constants;
};

// Shallow network (L = 1, n_out = 1) bounds in the order {K, TV, W1}:
//   d_K  <= cw*sqrt(V) / D / sqrt(n1),      V = Var(sigma(kappa*Z)^2),
//   d_TV <= 2 * d_K,                        kappa^2 = cb + cw*O^(0),
//   d_W1 <= sqrt(2/pi)*cw*sqrt(V)/sqrt(D)/sqrt(n1),   D = cb + cw*E[sigma(kappa*Z)^2].
std::array<BoundReport, 3> shallow_bounds(const ActivationSpec& act,
                                          const Architecture& arch,
                                          std::span<const double> x,
                                          const QuadratureScheme& scheme = {});

// Comparison bounds for C^2 activations with envelope r1 + r2|x|^gamma
// (must also dominate |sigma''|). Same {K, TV, W1} order. The L4 factor
// ||r1 + r2|Z*sqrt(a)|^gamma||_{L4}^2 is expanded binomially over E|Z|^{k*gamma}.
std::array<BoundReport, 3> comparison_bounds(const ActivationSpec& act,
                                      const Architecture& arch,
                                      std::span<const double> x,
                                      const QuadratureScheme& scheme = {});

// Deep convex-distance bound: C1 * collective_sum(L). Constants map carries
// C1, C2, C3 (C3 absent when O^(L) = 0), the variant bounds, the collective
// sum and its per-layer terms.
BoundReport deep_convex_bound(const ActivationSpec& act, const Architecture& arch,
                              std::span<const double> x,
                              const QuadratureScheme& scheme = {});

// Deep 1-Wasserstein bound: K1 * collective_sum(L), with K2/K3 variants.
BoundReport deep_w1_bound(const ActivationSpec& act, const Architecture& arch,
                          std::span<const double> x,
                          const QuadratureScheme& scheme = {});

// Convex-distance bound from a 1-Wasserstein bound in dimension d, using the
// upper bracket of the worst-case Gaussian perimeter (valid here since the
// limiting covariance is a positive multiple of the identity):
//   2*sqrt(2) * ((2*pi)^{-1/4} d^{1/4})^{1/2} * sqrt(w1)
//     = 2^{11/8} pi^{-1/8} d^{1/8} sqrt(w1).
double convex_from_w1(double w1_bound, std::int64_t d);

// Bracket for the worst-case anisotropic Gaussian perimeter in dimension d:
//   e^{-5/4} d^{1/4} <= Gamma <= (2*pi)^{-1/4} d^{1/4}.
std::pair<double, double> gamma_bounds(std::int64_t d);

const char* metric_name(Metric m);
const char* provenance_name(Provenance p);

} // namespace gnncert
