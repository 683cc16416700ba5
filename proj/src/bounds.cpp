#include "gnncert/bounds.hpp"

#include <cmath>

#include "gnncert/errors.hpp"
#include "gnncert/numeric.hpp"

namespace gnncert {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double effective_of(Metric m, double value) {
    return m == Metric::wasserstein1 ? value : std::min(1.0, value);
}

BoundReport make_report(Metric m, Provenance p, double value,
                        std::map<std::string, double> constants) {
    BoundReport r;
    r.metric = m;
    r.provenance = p;
    r.value = value;
    r.effective = effective_of(m, value);
    r.constants = std::move(constants);
    return r;
}

double binom4(int k) {
    static constexpr double c[5] = {1, 4, 6, 4, 1};
    return c[k];
}

} // namespace

const char* metric_name(Metric m) {
    switch (m) {
        case Metric::kolmogorov: return "kolmogorov";
        case Metric::total_variation: return "total_variation";
        case Metric::wasserstein1: return "wasserstein1";
        case Metric::convex: return "convex";
    }
    return "unknown";
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::shallow_direct: return "shallow_direct";
        case Provenance::shallow_comparison: return "shallow_comparison";
        case Provenance::deep_convex: return "deep_convex";
        case Provenance::deep_w1: return "deep_w1";
        case Provenance::w1_conversion: return "w1_conversion";
    }
    return "unknown";
}

std::array<BoundReport, 3> shallow_bounds(const ActivationSpec& act, const Architecture& arch,
                                          std::span<const double> x,
                                          const QuadratureScheme& scheme) {
    arch.validate();
    if (arch.depth != 1 || arch.n_out != 1)
        throw DomainError("shallow bounds require L = 1 and univariate output");
    const double o0 = o_zero(x, arch.n_in);
    const double kappa_sq = arch.cb + arch.cw * o0;
    const double kappa = std::sqrt(kappa_sq);
    const double var = variance_sigma_sq(act, kappa, scheme); // throws if degenerate
    const double e2 = expect_sigma_power(act, kappa, 2, scheme);
    const double denom = arch.cb + arch.cw * e2;
    const double sqrt_n1 = std::sqrt(static_cast<double>(arch.hidden[0]));

    std::map<std::string, double> constants = {
        {"kappa_sq", kappa_sq},   {"e_sigma_sq", e2},
        {"var_sigma_sq", var},    {"sqrt_var", std::sqrt(var)},
        {"denominator", denom},   {"n1", static_cast<double>(arch.hidden[0])},
        {"cw", arch.cw},
    };

    const double dk = arch.cw * std::sqrt(var) / denom / sqrt_n1;
    const double dtv = 2.0 * dk;
    const double dw1 = std::sqrt(2.0 / kPi) * arch.cw * std::sqrt(var) / std::sqrt(denom) / sqrt_n1;

    return {make_report(Metric::kolmogorov, Provenance::shallow_direct, dk, constants),
            make_report(Metric::total_variation, Provenance::shallow_direct, dtv, constants),
            make_report(Metric::wasserstein1, Provenance::shallow_direct, dw1, constants)};
}

std::array<BoundReport, 3> comparison_bounds(const ActivationSpec& act, const Architecture& arch,
                                      std::span<const double> x,
                                      const QuadratureScheme& scheme) {
    arch.validate();
    if (arch.depth != 1 || arch.n_out != 1)
        throw DomainError("comparison bounds require L = 1 and univariate output");
    if (!act.growth)
        throw DomainError("comparison bounds require a growth envelope (C^2 activation)");
    const GrowthEnvelope g = *act.growth;
    const double a = arch.cb + arch.cw * o_zero(x, arch.n_in);
    const double shape =
        std::sqrt(a + a * a * (2.0 + std::sqrt(3.0 * (1.0 + 2.0 * a + 3.0 * a * a))));
    // ||r1 + r2 |Z sqrt(a)|^gamma||_{L4}^2 = sqrt(E[(r1 + r2 a^{g/2} |Z|^g)^4]).
    double fourth = 0.0;
    for (int k = 0; k <= 4; ++k)
        fourth += binom4(k) * pow_int(g.r1, 4 - k) *
                  pow_int(g.r2 * std::pow(a, 0.5 * g.gamma), k) * abs_moment(k * g.gamma);
    const double l4_sq = std::sqrt(fourth);

    const double o1 = expect_sigma_power(act, std::sqrt(a), 2, scheme);
    const double denom = arch.cb + arch.cw * o1;
    const double sqrt_n1 = std::sqrt(static_cast<double>(arch.hidden[0]));
    const double common = shape * l4_sq / sqrt_n1;

    std::map<std::string, double> constants = {
        {"a", a},          {"shape_factor", shape}, {"l4_factor_sq", l4_sq},
        {"o1", o1},        {"denominator", denom},  {"n1", static_cast<double>(arch.hidden[0])},
        {"r1", g.r1},      {"r2", g.r2},            {"gamma", g.gamma},
    };

    const double dk = (2.0 / denom) * common;
    const double dtv = (4.0 / denom) * common;
    const double dw1 = std::sqrt(8.0 / kPi) / std::sqrt(denom) * common;

    return {make_report(Metric::kolmogorov, Provenance::shallow_comparison, dk, constants),
            make_report(Metric::total_variation, Provenance::shallow_comparison, dtv, constants),
            make_report(Metric::wasserstein1, Provenance::shallow_comparison, dw1, constants)};
}

BoundReport deep_convex_bound(const ActivationSpec& act, const Architecture& arch,
                              std::span<const double> x, const QuadratureScheme& scheme) {
    arch.validate();
    const LayerStats stats = layer_stats(act, arch, x, scheme);
    const double sum = collective_sum(stats, arch, arch.depth); // throws without a P route
    const double nu_sq = stats.nu_sq;
    const double nout_pow = std::pow(static_cast<double>(arch.n_out), 59.0 / 24.0);

    const auto prefactor = [&](double v) {
        return arch.cw * (80.0 / std::pow(v, 1.5) + 48.0 / v + 20.0 * std::sqrt(2.0)) * nout_pow;
    };
    const double c1 = prefactor(nu_sq);
    const double c2 = prefactor(arch.cb);

    std::map<std::string, double> constants = {
        {"C1", c1},
        {"C2", c2},
        {"bound_C2", c2 * sum},
        {"collective_sum", sum},
        {"nu_sq", nu_sq},
        {"o_last", stats.o_last()},
        {"p_l2", *stats.p_l2},
        {"multiplier", 4.0 * std::sqrt(2.0) * *stats.p_l2},
        {"nout_pow", nout_pow},
    };
    if (stats.o_last() > 0.0) {
        const double c3 = prefactor(arch.cw * stats.o_last());
        constants["C3"] = c3;
        constants["bound_C3"] = c3 * sum;
    }
    for (int k = 1; k <= arch.depth; ++k) {
        const double mult = 4.0 * std::sqrt(2.0) * *stats.p_l2;
        const double factor = (k == arch.depth) ? 1.0 : std::pow(mult, arch.depth - k);
        constants["term_" + std::to_string(k)] =
            factor * stats.c_seq[static_cast<std::size_t>(k - 1)] /
            std::sqrt(static_cast<double>(arch.width(k)));
    }
    return make_report(Metric::convex, Provenance::deep_convex, c1 * sum,
                       std::move(constants));
}

BoundReport deep_w1_bound(const ActivationSpec& act, const Architecture& arch,
                          std::span<const double> x, const QuadratureScheme& scheme) {
    arch.validate();
    const LayerStats stats = layer_stats(act, arch, x, scheme);
    const double sum = collective_sum(stats, arch, arch.depth);
    const double nout = static_cast<double>(arch.n_out);

    const double k1 = nout * arch.cw / std::sqrt(stats.nu_sq);
    const double k2 = nout * arch.cw / std::sqrt(arch.cb);
    const double value = k1 * sum;

    std::map<std::string, double> constants = {
        {"K1", k1},
        {"K2", k2},
        {"bound_K2", k2 * sum},
        {"collective_sum", sum},
        {"nu_sq", stats.nu_sq},
        {"o_last", stats.o_last()},
        {"convex_from_w1", convex_from_w1(value, arch.n_out)},
    };
    if (stats.o_last() > 0.0) {
        const double k3 = nout * std::sqrt(arch.cw) / std::sqrt(stats.o_last());
        constants["K3"] = k3;
        constants["bound_K3"] = k3 * sum;
    }
    return make_report(Metric::wasserstein1, Provenance::deep_w1, value,
                       std::move(constants));
}

double convex_from_w1(double w1_bound, std::int64_t d) {
    if (w1_bound < 0.0) throw DomainError("convex_from_w1 requires a nonnegative bound");
    if (d < 1) throw DomainError("convex_from_w1 requires dimension d >= 1");
    const double gamma_upper = gamma_bounds(d).second;
    return 2.0 * std::sqrt(2.0) * std::sqrt(gamma_upper) * std::sqrt(w1_bound);
}

std::pair<double, double> gamma_bounds(std::int64_t d) {
    if (d < 1) throw DomainError("gamma_bounds requires dimension d >= 1");
    const double d14 = std::pow(static_cast<double>(d), 0.25);
    return {std::exp(-1.25) * d14, std::pow(2.0 * kPi, -0.25) * d14};
}

} // namespace gnncert
