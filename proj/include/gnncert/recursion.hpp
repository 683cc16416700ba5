#pragma once

#include <span>
#include <vector>

#include "gnncert/architecture.hpp"
#include "gnncert/gauss.hpp"

namespace gnncert {

// O^(0) = (1/n0) * sum x_j^2.
double o_zero(std::span<const double> x, std::int64_t n0);

// O^(ell) = E[sigma(Z*sqrt(cb + cw*O^(ell-1)))^2], ell = 1..L.
std::vector<double> o_sequence(const ActivationSpec& act, const Architecture& arch,
                               std::span<const double> x,
                               const QuadratureScheme& scheme = {});

// c_ell = sqrt(2 * E[sigma(Z*sqrt(cb + cw*O^(ell-1)))^4]).
std::vector<double> c_sequence(const ActivationSpec& act, const Architecture& arch,
                               std::span<const double> x,
                               const QuadratureScheme& scheme = {});

LayerStats layer_stats(const ActivationSpec& act, const Architecture& arch,
                       std::span<const double> x,
                       const QuadratureScheme& scheme = {});

// L2 bound for the collective observable at layer ell:
//   sum_{k=1}^{ell} (4*sqrt(2)*||P(|Z|)||_2)^{ell-k} * c_k / sqrt(n_k),
// with the 0^0 = 1 convention so the k = ell term survives when P == 0.
double collective_sum(const LayerStats& stats, const Architecture& arch, int ell);

double collective_bound(const ActivationSpec& act, const Architecture& arch,
                        std::span<const double> x, int ell,
                        const QuadratureScheme& scheme = {});

} // namespace gnncert
