#include "gnncert/validate.hpp"

#include <cmath>

#include "gnncert/errors.hpp"
#include "gnncert/numeric.hpp"

namespace gnncert {

namespace {

ValidationCheck check_le(std::string name, double value, double limit,
                         std::map<std::string, double> detail = {}) {
    ValidationCheck c;
    c.name = std::move(name);
    c.value = value;
    c.limit = limit;
    c.pass = value <= limit;
    c.detail = std::move(detail);
    return c;
}

// Sample variance with mean subtraction, pairwise accumulation throughout.
double sample_variance(std::span<const double> v) {
    const double mean = pairwise_mean(v);
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
    return pairwise_sum(sq) / (static_cast<double>(v.size()) - 1.0);
}

std::vector<double> batch_column(const SampleBatch& batch, std::int64_t col) {
    std::vector<double> out(static_cast<std::size_t>(batch.m));
    for (std::int64_t r = 0; r < batch.m; ++r)
        out[static_cast<std::size_t>(r)] = batch.at(r, col);
    return out;
}

void run_shallow(ValidationReport& rep, std::int64_t m, std::uint64_t seed, int workers) {
    const ActivationSpec relu = make_activation(ActKind::relu);
    Architecture arch;
    arch.depth = 1;
    arch.n_in = 4;
    arch.hidden = {100};
    arch.n_out = 1;
    arch.cb = 1.0;
    arch.cw = 1.0;
    const std::vector<double> x = {0.0, 0.0, 0.0, 0.0};

    const auto bounds = shallow_bounds(relu, arch, x);
    const LayerStats stats = layer_stats(relu, arch, x);
    const SampleBatch batch = sample_outputs(relu, arch, x, m, seed, workers);
    const auto column = batch_column(batch, 0);

    const EmpiricalEstimate ks = empirical_ks(column, stats.nu_sq);
    rep.checks.push_back(check_le("shallow_ks_vs_bound", ks.value,
                                  std::min(1.0, bounds[0].value) + 3.0 * ks.mc_halfwidth,
                                  {{"bound_k", bounds[0].value},
                                   {"bound_tv", bounds[1].value},
                                   {"mc_halfwidth", ks.mc_halfwidth}}));

    const EmpiricalEstimate w1 = empirical_w1(column, stats.nu_sq);
    rep.checks.push_back(check_le("shallow_w1_vs_bound", w1.value,
                                  bounds[2].value + 3.0 * w1.mc_halfwidth,
                                  {{"bound_w1", bounds[2].value},
                                   {"mc_halfwidth", w1.mc_halfwidth}}));

    // Rectangle localization [-nu, nu]: the certified interval must contain
    // the empirical frequency.
    const double nu = std::sqrt(stats.nu_sq);
    Rect rect;
    rect.sides = {{-nu, nu}};
    const LocalizationReport loc = certified_interval(relu, arch, x, rect);
    const EmpiricalEstimate freq = empirical_rect_freq(batch, rect);
    ValidationCheck inside;
    inside.name = "shallow_rect_freq_in_interval";
    inside.value = freq.value;
    inside.limit = loc.hi;
    inside.pass = freq.value >= loc.lo && freq.value <= loc.hi;
    inside.detail = {{"interval_lo", loc.lo},
                     {"interval_hi", loc.hi},
                     {"p_limit", loc.p_limit},
                     {"c_bound", loc.c_bound},
                     {"mc_halfwidth", freq.mc_halfwidth}};
    rep.checks.push_back(std::move(inside));
}

void run_collective(ValidationReport& rep, std::int64_t m, std::uint64_t seed, int workers) {
    const ActivationSpec relu = make_activation(ActKind::relu);
    Architecture arch;
    arch.depth = 2;
    arch.n_in = 4;
    arch.hidden = {50, 50};
    arch.n_out = 1;
    arch.cb = 1.0;
    arch.cw = 1.0;
    const std::vector<double> x = {0.0, 0.0, 0.0, 0.0};

    const LayerStats stats = layer_stats(relu, arch, x);
    for (int ell = 1; ell <= 2; ++ell) {
        const auto draws = sample_collective(relu, arch, x, ell, m, seed + ell, workers);
        const double target = stats.o_seq[static_cast<std::size_t>(ell - 1)];
        const EmpiricalEstimate rms = collective_rms_error(draws, target);
        const double bound = collective_sum(stats, arch, ell);
        rep.checks.push_back(check_le("collective_rms_vs_bound_l" + std::to_string(ell), rms.value,
                                      bound + 3.0 * rms.mc_halfwidth,
                                      {{"bound", bound},
                                       {"target", target},
                                       {"mc_halfwidth", rms.mc_halfwidth}}));
        if (ell == 1) {
            // At the first layer the replicate RMS has the exact i.i.d. value
            // sqrt(Var(sigma(Z)^2)/n1).
            const double exact =
                std::sqrt(variance_sigma_sq(relu, std::sqrt(arch.cb + arch.cw * stats.o0)) /
                          static_cast<double>(arch.hidden[0]));
            rep.checks.push_back(check_le("collective_rms_l1_exact_reldev",
                                          std::abs(rms.value - exact) / exact, 0.05,
                                          {{"exact", exact}, {"rms", rms.value}}));
        }
    }
}

void run_deep(ValidationReport& rep, std::int64_t m, std::uint64_t seed, int workers) {
    const ActivationSpec relu = make_activation(ActKind::relu);
    Architecture arch;
    arch.depth = 3;
    arch.n_in = 4;
    arch.hidden = {50, 50, 50};
    arch.n_out = 3;
    arch.cb = 1.0;
    arch.cw = 1.0;
    const std::vector<double> x = {0.0, 0.0, 0.0, 0.0};

    const LayerStats stats = layer_stats(relu, arch, x);
    const BoundReport convex = deep_convex_bound(relu, arch, x);
    const SampleBatch batch = sample_outputs(relu, arch, x, m, seed, workers);

    for (std::int64_t c = 0; c < arch.n_out; ++c) {
        const auto column = batch_column(batch, c);
        const EmpiricalEstimate ks = empirical_ks(column, stats.nu_sq);
        const std::string tag = "deep_coord" + std::to_string(c + 1);
        rep.checks.push_back(check_le(tag + "_ks", ks.value, 0.05,
                                      {{"mc_halfwidth", ks.mc_halfwidth}}));
        rep.checks.push_back(check_le(tag + "_ks_vs_convex", ks.value,
                                      std::min(1.0, convex.value) + 3.0 * ks.mc_halfwidth,
                                      {{"convex_bound", convex.value}}));
        const double var = sample_variance(column);
        rep.checks.push_back(check_le(tag + "_variance_reldev",
                                      std::abs(var - stats.nu_sq) / stats.nu_sq, 0.03,
                                      {{"variance", var}, {"nu_sq", stats.nu_sq}}));
    }
}

} // namespace

std::vector<std::string> validate_presets() {
    return {"shallow-relu", "collective-relu", "deep-relu", "all"};
}

ValidationReport run_validate(const std::string& preset, std::int64_t samples,
                              std::uint64_t seed, int workers) {
    ValidationReport rep;
    rep.preset = preset;
    rep.seed = seed;
    if (preset == "shallow-relu") {
        rep.samples = samples > 0 ? samples : 100000;
        run_shallow(rep, rep.samples, seed, workers);
    } else if (preset == "collective-relu") {
        rep.samples = samples > 0 ? samples : 10000;
        run_collective(rep, rep.samples, seed, workers);
    } else if (preset == "deep-relu") {
        rep.samples = samples > 0 ? samples : 50000;
        run_deep(rep, rep.samples, seed, workers);
    } else if (preset == "all") {
        rep.samples = samples;
        run_shallow(rep, samples > 0 ? samples : 100000, seed, workers);
        run_collective(rep, samples > 0 ? samples : 10000, seed, workers);
        run_deep(rep, samples > 0 ? samples : 50000, seed, workers);
    } else {
        throw DomainError("unknown validate preset '" + preset + "'");
    }
    rep.pass = true;
    for (const ValidationCheck& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

} // namespace gnncert
