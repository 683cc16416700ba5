#include "gnncert/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>

#include "gnncert/errors.hpp"
#include "gnncert/gauss.hpp"
#include "gnncert/numeric.hpp"
#include "gnncert/philox.hpp"

namespace gnncert {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t fnv1a_f64(std::uint64_t h, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    return fnv1a(h, &bits, sizeof(bits));
}

double total_draws(const Architecture& arch, int stop_layer) {
    double draws = 0.0;
    for (int ell = 1; ell <= stop_layer; ++ell)
        draws += static_cast<double>(arch.width(ell)) *
                 (static_cast<double>(arch.width(ell - 1)) + 1.0);
    return draws;
}

void guard_draws(const Architecture& arch, int stop_layer, std::int64_t m,
                 const SimulateLimits& limits) {
    const double cost = static_cast<double>(m) * total_draws(arch, stop_layer);
    if (cost > limits.max_weight_draws)
        throw ResourceError("simulation would draw " + std::to_string(cost) +
                            " parameters, above the budget of " +
                            std::to_string(limits.max_weight_draws));
}

// One replicate of the forward recursion up to (and including) stop_layer.
// Draw order is fixed: per layer, per neuron, bias first then weights in
// ascending input index. `pre` receives the pre-activations of stop_layer.
void forward_replicate(const ActivationSpec& act, const Architecture& arch,
                       std::span<const double> x, RandomStream& rng, int stop_layer,
                       std::vector<double>& hidden, std::vector<double>& pre) {
    const double sqrt_cb = std::sqrt(arch.cb);
    hidden.assign(x.begin(), x.end());
    for (int ell = 1; ell <= stop_layer; ++ell) {
        const std::int64_t n = arch.width(ell);
        const std::int64_t fan_in = arch.width(ell - 1);
        const double w_scale = std::sqrt(arch.cw / static_cast<double>(fan_in));
        pre.resize(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            double acc = sqrt_cb * rng.next_normal();
            for (std::int64_t j = 0; j < fan_in; ++j)
                acc += w_scale * rng.next_normal() * hidden[static_cast<std::size_t>(j)];
            pre[static_cast<std::size_t>(i)] = acc;
        }
        if (ell < stop_layer) {
            hidden.resize(static_cast<std::size_t>(n));
            for (std::int64_t i = 0; i < n; ++i)
                hidden[static_cast<std::size_t>(i)] = eval(act, pre[static_cast<std::size_t>(i)]);
        }
    }
}

} // namespace

std::uint64_t config_fingerprint(const ActivationSpec& act, const Architecture& arch,
                                 std::span<const double> x) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    const int kind = static_cast<int>(act.eval_kind);
    h = fnv1a(h, &kind, sizeof(kind));
    h = fnv1a(h, &act.degree, sizeof(act.degree));
    h = fnv1a_f64(h, act.lip.value_or(-1.0));
    h = fnv1a_f64(h, act.lip_sq.value_or(-1.0));
    if (act.growth) {
        h = fnv1a_f64(h, act.growth->r1);
        h = fnv1a_f64(h, act.growth->r2);
        h = fnv1a_f64(h, act.growth->gamma);
    }
    h = fnv1a(h, &arch.depth, sizeof(arch.depth));
    h = fnv1a(h, &arch.n_in, sizeof(arch.n_in));
    h = fnv1a(h, &arch.n_out, sizeof(arch.n_out));
    for (std::int64_t w : arch.hidden) h = fnv1a(h, &w, sizeof(w));
    h = fnv1a_f64(h, arch.cb);
    h = fnv1a_f64(h, arch.cw);
    for (double v : x) h = fnv1a_f64(h, v);
    return h;
}

SampleBatch sample_outputs(const ActivationSpec& act, const Architecture& arch,
                           std::span<const double> x, std::int64_t m, std::uint64_t seed,
                           int workers, const SimulateLimits& limits) {
    arch.validate();
    if (m < 1) throw DomainError("sample_outputs requires m >= 1");
    if (static_cast<std::int64_t>(x.size()) != arch.n_in)
        throw DomainError("input length does not match n0");
    guard_draws(arch, arch.depth + 1, m, limits);
    if (static_cast<double>(m) * static_cast<double>(arch.n_out) > limits.max_stored_scalars)
        throw ResourceError("sample storage m * n_out exceeds the configured budget");

    SampleBatch batch;
    batch.m = m;
    batch.n_out = arch.n_out;
    batch.seed = seed;
    batch.fingerprint = config_fingerprint(act, arch, x);
    batch.values.resize(static_cast<std::size_t>(m * arch.n_out));

    parallel_chunks(m, workers, [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> hidden, pre;
        for (std::int64_t r = begin; r < end; ++r) {
            RandomStream rng(seed, static_cast<std::uint64_t>(r));
            forward_replicate(act, arch, x, rng, arch.depth + 1, hidden, pre);
            std::copy(pre.begin(), pre.end(),
                      batch.values.begin() + static_cast<std::ptrdiff_t>(r * arch.n_out));
        }
    });
    return batch;
}

std::vector<double> sample_collective(const ActivationSpec& act, const Architecture& arch,
                                      std::span<const double> x, int ell, std::int64_t m,
                                      std::uint64_t seed, int workers,
                                      const SimulateLimits& limits) {
    arch.validate();
    if (ell < 1 || ell > arch.depth) throw DomainError("collective layer out of range");
    if (m < 1) throw DomainError("sample_collective requires m >= 1");
    if (static_cast<std::int64_t>(x.size()) != arch.n_in)
        throw DomainError("input length does not match n0");
    guard_draws(arch, ell, m, limits);
    if (static_cast<double>(m) > limits.max_stored_scalars)
        throw ResourceError("sample storage exceeds the configured budget");

    std::vector<double> draws(static_cast<std::size_t>(m));
    parallel_chunks(m, workers, [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> hidden, pre;
        for (std::int64_t r = begin; r < end; ++r) {
            RandomStream rng(seed, static_cast<std::uint64_t>(r));
            forward_replicate(act, arch, x, rng, ell, hidden, pre);
            double acc = 0.0;
            for (double z : pre) {
                const double s = eval(act, z);
                acc += s * s;
            }
            draws[static_cast<std::size_t>(r)] = acc / static_cast<double>(pre.size());
        }
    });
    return draws;
}

const char* statistic_name(Statistic s) {
    switch (s) {
        case Statistic::ks: return "ks";
        case Statistic::w1_1d: return "w1_1d";
        case Statistic::rect_freq: return "rect_freq";
        case Statistic::collective_rms: return "collective_rms";
    }
    return "unknown";
}

EmpiricalEstimate empirical_ks(std::span<const double> samples, double nu_sq) {
    if (samples.empty()) throw DomainError("empirical_ks needs at least one sample");
    if (!(nu_sq > 0.0)) throw DomainError("empirical_ks requires nu_sq > 0");
    const double nu = std::sqrt(nu_sq);
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double m = static_cast<double>(sorted.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double g = normal_cdf(sorted[i] / nu);
        ks = std::max(ks, std::abs((static_cast<double>(i) + 1.0) / m - g));
        ks = std::max(ks, std::abs(static_cast<double>(i) / m - g));
    }
    EmpiricalEstimate e;
    e.statistic = Statistic::ks;
    e.value = ks;
    e.mc_halfwidth = 1.36 / std::sqrt(m);
    e.m = static_cast<std::int64_t>(sorted.size());
    return e;
}

namespace {

// Antiderivative of Phi: integral of Phi over (-inf, u] equals u*Phi(u)+phi(u).
double psi(double u) { return u * normal_cdf(u) + normal_pdf(u); }

// Exact integral of |F_m(t) - Phi(t/nu)| over the real line.
double w1_exact(std::span<const double> sorted, double nu) {
    const double m = static_cast<double>(sorted.size());
    // Integral of G over the segment [a, b] (G = Phi(./nu)).
    const auto seg = [nu](double a, double b) { return nu * (psi(b / nu) - psi(a / nu)); };
    double total = nu * psi(sorted.front() / nu); // left tail: F_m = 0
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const double a = sorted[i], b = sorted[i + 1];
        if (a == b) continue;
        const double level = (static_cast<double>(i) + 1.0) / m;
        const double ga = normal_cdf(a / nu), gb = normal_cdf(b / nu);
        if (ga >= level) {
            total += seg(a, b) - level * (b - a);
        } else if (gb <= level) {
            total += level * (b - a) - seg(a, b);
        } else {
            const double cross = nu * normal_quantile(level);
            total += level * (cross - a) - seg(a, cross);
            total += seg(cross, b) - level * (b - cross);
        }
    }
    total += nu * psi(-sorted.back() / nu); // right tail: F_m = 1
    return total;
}

} // namespace

EmpiricalEstimate empirical_w1(std::span<const double> samples, double nu_sq) {
    if (samples.empty()) throw DomainError("empirical_w1 needs at least one sample");
    if (!(nu_sq > 0.0)) throw DomainError("empirical_w1 requires nu_sq > 0");
    const double nu = std::sqrt(nu_sq);
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    EmpiricalEstimate e;
    e.statistic = Statistic::w1_1d;
    e.value = w1_exact(sorted, nu);
    e.m = static_cast<std::int64_t>(samples.size());

    // Spread of ten consecutive-block estimates (replication order, so the
    // split is worker-independent).
    const std::size_t groups = 10;
    if (samples.size() >= 2 * groups) {
        std::vector<double> stats;
        stats.reserve(groups);
        for (std::size_t g = 0; g < groups; ++g) {
            const std::size_t begin = samples.size() * g / groups;
            const std::size_t end = samples.size() * (g + 1) / groups;
            std::vector<double> part(samples.begin() + static_cast<std::ptrdiff_t>(begin),
                                     samples.begin() + static_cast<std::ptrdiff_t>(end));
            std::sort(part.begin(), part.end());
            stats.push_back(w1_exact(part, nu));
        }
        const double mean = pairwise_mean(stats);
        double ss = 0.0;
        for (double s : stats) ss += (s - mean) * (s - mean);
        const double sd = std::sqrt(ss / (static_cast<double>(groups) - 1.0));
        e.mc_halfwidth = 1.96 * sd / std::sqrt(static_cast<double>(groups));
    } else {
        e.mc_halfwidth = e.value; // too few samples for a spread estimate
    }
    return e;
}

EmpiricalEstimate empirical_rect_freq(const SampleBatch& batch, const Rect& rect) {
    rect.validate();
    if (static_cast<std::int64_t>(rect.dim()) != batch.n_out)
        throw DomainError("rectangle dimension does not match sample dimension");
    std::int64_t inside = 0;
    for (std::int64_t r = 0; r < batch.m; ++r) {
        bool in = true;
        for (std::int64_t c = 0; c < batch.n_out && in; ++c) {
            const double v = batch.at(r, c);
            const auto& [lo, hi] = rect.sides[static_cast<std::size_t>(c)];
            in = (v >= lo && v <= hi);
        }
        inside += in ? 1 : 0;
    }
    EmpiricalEstimate e;
    e.statistic = Statistic::rect_freq;
    const double m = static_cast<double>(batch.m);
    e.value = static_cast<double>(inside) / m;
    e.mc_halfwidth = 1.96 * std::sqrt(e.value * (1.0 - e.value) / m);
    e.m = batch.m;
    return e;
}

EmpiricalEstimate collective_rms_error(std::span<const double> draws, double target) {
    if (draws.empty()) throw DomainError("collective_rms_error needs at least one draw");
    std::vector<double> sq(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double d = draws[i] - target;
        sq[i] = d * d;
    }
    const double mean_sq = pairwise_mean(sq);
    EmpiricalEstimate e;
    e.statistic = Statistic::collective_rms;
    e.value = std::sqrt(mean_sq);
    e.m = static_cast<std::int64_t>(draws.size());
    // Delta method: sd(rms) ~= sd(mean of squares) / (2 * rms).
    if (draws.size() >= 2 && mean_sq > 0.0) {
        double ss = 0.0;
        for (double q : sq) ss += (q - mean_sq) * (q - mean_sq);
        const double var_q = ss / (static_cast<double>(sq.size()) - 1.0);
        e.mc_halfwidth =
            1.96 * std::sqrt(var_q / static_cast<double>(sq.size())) / (2.0 * e.value);
    } else {
        e.mc_halfwidth = 0.0;
    }
    return e;
}

namespace {

void put_u32_le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64_le(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64_le(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
    return std::bit_cast<double>(bits);
}

} // namespace

void write_batch_binary(const SampleBatch& batch, const std::string& path) {
    std::string out;
    out.reserve(16 + batch.values.size() * 8);
    out += "GNNS";
    put_u32_le(out, 1u);
    put_u32_le(out, static_cast<std::uint32_t>(batch.m));
    put_u32_le(out, static_cast<std::uint32_t>(batch.n_out));
    for (double v : batch.values) put_f64_le(out, v);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot open '" + path + "' for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw DomainError("failed writing '" + path + "'");
}

SampleBatch read_batch_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open '" + path + "' for reading");
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (data.size() < 16 || data.compare(0, 4, "GNNS") != 0)
        throw DomainError("'" + path + "' is not a sample-batch file");
    const auto* p = reinterpret_cast<const unsigned char*>(data.data());
    const std::uint32_t version = get_u32_le(p + 4);
    if (version != 1u) throw DomainError("unsupported sample-batch version");
    SampleBatch batch;
    batch.m = get_u32_le(p + 8);
    batch.n_out = get_u32_le(p + 12);
    const std::size_t expect = static_cast<std::size_t>(batch.m * batch.n_out);
    if (data.size() != 16 + expect * 8) throw DomainError("sample-batch payload size mismatch");
    batch.values.resize(expect);
    for (std::size_t i = 0; i < expect; ++i) batch.values[i] = get_f64_le(p + 16 + i * 8);
    return batch;
}

void write_batch_csv(const SampleBatch& batch, std::ostream& os) {
    os << "replicate";
    for (std::int64_t c = 0; c < batch.n_out; ++c) os << ",z" << (c + 1);
    os << "\n";
    char buf[40];
    for (std::int64_t r = 0; r < batch.m; ++r) {
        os << r;
        for (std::int64_t c = 0; c < batch.n_out; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", batch.at(r, c));
            os << ',' << buf;
        }
        os << "\n";
    }
}

} // namespace gnncert
