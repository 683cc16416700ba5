#include "gnncert/recursion.hpp"

#include <cmath>

#include "gnncert/errors.hpp"
#include "gnncert/numeric.hpp"

namespace gnncert {

void Architecture::validate() const {
    if (depth < 1) throw DomainError("architecture depth must be >= 1");
    if (n_in < 1 || n_out < 1) throw DomainError("architecture widths must be >= 1");
    if (static_cast<int>(hidden.size()) != depth)
        throw DomainError("architecture needs exactly one width per hidden layer");
    for (std::int64_t w : hidden)
        if (w < 1) throw DomainError("architecture widths must be >= 1");
    if (!(cb > 0.0) || !(cw > 0.0)) throw DomainError("cb and cw must be positive");
}

double o_zero(std::span<const double> x, std::int64_t n0) {
    if (static_cast<std::int64_t>(x.size()) != n0)
        throw DomainError("input length does not match n0");
    std::vector<double> sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sq[i] = x[i] * x[i];
    return pairwise_mean(sq);
}

std::vector<double> o_sequence(const ActivationSpec& act, const Architecture& arch,
                               std::span<const double> x, const QuadratureScheme& scheme) {
    arch.validate();
    std::vector<double> seq(static_cast<std::size_t>(arch.depth));
    double prev = o_zero(x, arch.n_in);
    for (int ell = 1; ell <= arch.depth; ++ell) {
        const double kappa = std::sqrt(arch.cb + arch.cw * prev);
        prev = expect_sigma_power(act, kappa, 2, scheme);
        seq[static_cast<std::size_t>(ell - 1)] = prev;
    }
    return seq;
}

std::vector<double> c_sequence(const ActivationSpec& act, const Architecture& arch,
                               std::span<const double> x, const QuadratureScheme& scheme) {
    arch.validate();
    std::vector<double> cs(static_cast<std::size_t>(arch.depth));
    double prev = o_zero(x, arch.n_in);
    for (int ell = 1; ell <= arch.depth; ++ell) {
        const double kappa = std::sqrt(arch.cb + arch.cw * prev);
        const double e4 = expect_sigma_power(act, kappa, 4, scheme);
        cs[static_cast<std::size_t>(ell - 1)] = std::sqrt(2.0 * e4);
        prev = expect_sigma_power(act, kappa, 2, scheme);
    }
    return cs;
}

LayerStats layer_stats(const ActivationSpec& act, const Architecture& arch,
                       std::span<const double> x, const QuadratureScheme& scheme) {
    arch.validate();
    LayerStats s;
    s.o0 = o_zero(x, arch.n_in);
    s.o_seq.resize(static_cast<std::size_t>(arch.depth));
    s.c_seq.resize(static_cast<std::size_t>(arch.depth));
    double prev = s.o0;
    for (int ell = 1; ell <= arch.depth; ++ell) {
        const double kappa = std::sqrt(arch.cb + arch.cw * prev);
        const double e4 = expect_sigma_power(act, kappa, 4, scheme);
        s.c_seq[static_cast<std::size_t>(ell - 1)] = std::sqrt(2.0 * e4);
        prev = expect_sigma_power(act, kappa, 2, scheme);
        s.o_seq[static_cast<std::size_t>(ell - 1)] = prev;
    }
    try {
        s.p_l2 = p_l2_norm(act, arch.cb, arch.cw);
    } catch (const DomainError&) {
        s.p_l2 = std::nullopt;
    }
    s.nu_sq = arch.cb + arch.cw * s.o_last();
    if (!(s.nu_sq > 0.0)) throw DomainError("limiting output variance is not positive");
    return s;
}

double collective_sum(const LayerStats& stats, const Architecture& arch, int ell) {
    if (ell < 1 || ell > arch.depth) throw DomainError("collective layer out of range");
    if (!stats.p_l2) throw DomainError("deep bounds unavailable for this activation (no P route)");
    const double mult = 4.0 * std::sqrt(2.0) * *stats.p_l2;
    double sum = 0.0;
    for (int k = 1; k <= ell; ++k) {
        // 0^0 = 1 by convention: the k = ell term always contributes.
        const double factor = (k == ell) ? 1.0 : std::pow(mult, ell - k);
        sum += factor * stats.c_seq[static_cast<std::size_t>(k - 1)] /
               std::sqrt(static_cast<double>(arch.width(k)));
    }
    return sum;
}

double collective_bound(const ActivationSpec& act, const Architecture& arch,
                        std::span<const double> x, int ell, const QuadratureScheme& scheme) {
    const LayerStats stats = layer_stats(act, arch, x, scheme);
    return collective_sum(stats, arch, ell);
}

} // namespace gnncert
